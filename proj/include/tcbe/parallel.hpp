#ifndef TCBE_PARALLEL_HPP
#define TCBE_PARALLEL_HPP

#include <exception>

namespace tcbe {

// Carries the first exception thrown inside an OpenMP loop body out of the
// parallel region, where it would otherwise terminate the program.
class exception_slot {
public:
    template <class F>
    void run(F&& body) noexcept
    {
        try {
            body();
        } catch (...) {
            #pragma omp critical(tcbe_exception_slot)
            if (!error_)
                error_ = std::current_exception();
        }
    }

    void rethrow() const
    {
        if (error_)
            std::rethrow_exception(error_);
    }

private:
    std::exception_ptr error_;
};

} // namespace tcbe

#endif
