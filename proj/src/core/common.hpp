#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace ssops {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Error taxonomy. The CLI maps these to exit codes and the C API to status
// codes, so every throwing path in the core uses one of them.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct pole_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct accuracy_error : std::runtime_error {
    double achieved;
    accuracy_error(const std::string& msg, double achieved_error)
        : std::runtime_error(msg), achieved(achieved_error) {}
};
struct resolution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic generator (splitmix64 seeded xoshiro256++). std:: distributions
// are not sequence-stable across standard libraries, so uniform/normal are
// derived from the raw bits directly; identical seeds give identical streams
// everywhere, which the reproducibility contract of the CLI relies on.
class rng {
  public:
    explicit rng(std::uint64_t seed);
    std::uint64_t next();
    double uniform();                       // [0, 1)
    double uniform(double a, double b);     // [a, b)
    double normal();                        // standard normal, Box-Muller
  private:
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Worker count: explicit request > SSOPS_THREADS > hardware concurrency.
int resolve_thread_count(int requested = 0);

// Chunked parallel loop over [0, n). fn(begin, end) must be safe to run
// concurrently on disjoint ranges. Runs inline when threads <= 1.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace ssops
