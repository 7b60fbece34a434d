#pragma once

#include <exception>
#include <mutex>

namespace sgpic {

/// Captures the first exception thrown inside an OpenMP region so it can be
/// rethrown on the calling thread.
class ExceptionCollector {
public:
    template <class F>
    void run(F&& f) noexcept
    {
        try {
            f();
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!first_) {
                first_ = std::current_exception();
            }
        }
    }

    void rethrow() const
    {
        if (first_) {
            std::rethrow_exception(first_);
        }
    }

private:
    std::exception_ptr first_;
    std::mutex mutex_;
};

} // namespace sgpic
