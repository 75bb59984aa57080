#pragma once

#include <cmath>
#include <cstdint>

namespace svort {

// splitmix64: the standard finalizer; good enough to decorrelate seeds that
// differ in one counter.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Counter-based stream: state derived from (master, member, step) only, so
// members and steps can be generated in any order with identical results.
// xoshiro-style generator built on repeated splitmix64 of a counter; the
// sequence is fully specified here (no library distributions), hence
// platform-independent.
class RngStream {
  public:
    RngStream(std::uint64_t master, std::uint64_t member, std::uint64_t step) {
        std::uint64_t base = splitmix64(master);
        base = splitmix64(base ^ (0x9E3779B97F4A7C15ull * (member + 1)));
        base = splitmix64(base ^ (0xC2B2AE3D27D4EB4Full * (step + 1)));
        state_ = base;
    }

    std::uint64_t next_u64() { return splitmix64(state_ += 0x9E3779B97F4A7C15ull); }

    // uniform in (0, 1]: never 0, so log() below is safe
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
    }

    // Box-Muller pair; one value cached
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_uniform();
        double u2 = next_uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::uint64_t state_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace svort
