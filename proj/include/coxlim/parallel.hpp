#pragma once

#include <exception>
#include <mutex>

namespace coxlim {

// Carries the first exception thrown inside an OpenMP region out of it;
// exceptions must not cross the region boundary.
class ExceptionSlot {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr error_;
};

}  // namespace coxlim
