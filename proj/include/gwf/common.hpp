// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gwf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Dimension/shape violations (non-square atom, mismatched feature dims, ...).
struct shape_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Non-finite values produced by an iterative solver.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A scaling kernel lost an entire row or column (all-zero mass).
struct degenerate_error : numerical_error {
    using numerical_error::numerical_error;
};

// Malformed file contents (bad edge list, inconsistent attributes, ...).
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Missing or unreadable files.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic RNG with pinned distributions. std::uniform_real_distribution
// and friends are implementation-defined, so draws are derived directly from
// the mt19937_64 stream to keep seeded results stable across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // uniform in [0, 1)
    double uniform01() {
        return static_cast<double>(state_() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n)
    std::uint64_t uniform_int(std::uint64_t n) {
        // rejection sampling to avoid modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = state_();
        } while (x >= limit);
        return x % n;
    }

    // standard normal via Box-Muller
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        constexpr double two_pi = 6.283185307179586476925286766559;
        spare_ = r * std::sin(two_pi * u2);
        have_spare_ = true;
        return r * std::cos(two_pi * u2);
    }

  private:
    struct SplitMix {
        std::uint64_t s;
        explicit SplitMix(std::uint64_t seed) : s(seed) {}
        std::uint64_t operator()() {
            std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        }
    };
    SplitMix state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace gwf
