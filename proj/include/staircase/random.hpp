#pragma once

#include <cstdint>
#include <random>

#include "staircase/errors.hpp"
#include "staircase/rational.hpp"

namespace staircase {

/// std::mt19937_64 seeded from (seed, stream) through std::seed_seq. Both the engine
/// and seed_seq are fully specified by the standard, so a given (seed, stream)
/// produces the same sequence everywhere.
class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    eng_.seed(seq);
  }

  std::uint64_t next() { return eng_(); }

  /// Derived generator for shard `k`; independent of how many shards exist.
  static Rng for_shard(std::uint64_t seed, std::uint64_t shard) { return Rng(seed, shard + 1); }

private:
  std::mt19937_64 eng_;
};

/// Bernoulli(p) for exact rational p, without rounding. A 64-bit draw u is compared
/// with floor(p * 2^64); only on a tie does the comparison continue on the next
/// 64 bits of the binary expansion of p.
class ExactBernoulli {
public:
  ExactBernoulli() = default;
  explicit ExactBernoulli(const Rational& p) : p_(p) {
    if (p < 0 || p > 1)
      throw ParameterError("probability outside [0,1]: " + p.get_str());
    if (p == 1) {
      always_ = true;
      return;
    }
    if (p == 0)
      return;
    Integer scaled = p.get_num();
    scaled <<= 64;
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), p.get_den_mpz_t());
    threshold_ = to_u64(q);
    rem_ = r;
    den_ = p.get_den();
    live_ = true;
  }

  const Rational& p() const { return p_; }

  bool operator()(Rng& rng) const {
    if (always_)
      return true;
    if (!live_)
      return false;
    std::uint64_t u = rng.next();
    if (u != threshold_)
      return u < threshold_;
    // tie: keep expanding the fraction rem/den in base 2^64
    Integer rem = rem_;
    while (rem != 0) {
      rem <<= 64;
      Integer q;
      mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), rem.get_mpz_t(), den_.get_mpz_t());
      const std::uint64_t t = to_u64(q);
      u = rng.next();
      if (u != t)
        return u < t;
    }
    return false;
  }

private:
  static std::uint64_t to_u64(const Integer& z) {
    std::uint64_t lo = mpz_getlimbn(z.get_mpz_t(), 0);
    if constexpr (sizeof(mp_limb_t) < 8)
      lo |= static_cast<std::uint64_t>(mpz_getlimbn(z.get_mpz_t(), 1)) << 32;
    return lo;
  }

  Rational p_ = 0;
  bool always_ = false;
  bool live_ = false;
  std::uint64_t threshold_ = 0;
  Integer rem_ = 0;
  Integer den_ = 1;
};

inline bool bernoulli(Rng& rng, const Rational& p) { return ExactBernoulli(p)(rng); }

} // namespace staircase
