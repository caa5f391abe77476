#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace cslap
{

// Seeded Gaussian source. std::mt19937_64 is bit-exactly specified by the standard, and the
// Box-Muller transform below is written out explicitly so the stream does not depend on
// the standard library's normal_distribution.
class GaussianRng
{
public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on (0, 1).
  double Uniform()
  {
    // 53 random bits; 0.5 offset keeps the result away from zero.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double Normal()
  {
    if (has_spare_)
    {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = Uniform(), u2 = Uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  std::uint64_t Bits() { return engine_(); }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cslap
