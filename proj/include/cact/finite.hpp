#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cact {

using elem = std::uint32_t;

constexpr std::uint64_t default_max_space = 1'000'000;
constexpr std::uint64_t default_samples = 100'000;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpaceTooLarge : Error {
  std::uint64_t size;
  std::uint64_t limit;
  SpaceTooLarge(std::uint64_t size, std::uint64_t limit)
      : Error("index space of " + std::to_string(size) + " points exceeds limit " +
              std::to_string(limit)),
        size(size), limit(limit) {}
};

struct SearchSpaceTooLarge : Error {
  using Error::Error;
};

struct ShapeMismatch : Error {
  using Error::Error;
};

struct NotClosedUnderDelta : Error {
  using Error::Error;
};

struct DepthExceeded : Error {
  using Error::Error;
};

struct CompositionMismatch : ShapeMismatch {
  using ShapeMismatch::ShapeMismatch;
};

struct DepthMismatch : ShapeMismatch {
  using ShapeMismatch::ShapeMismatch;
};

struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position(position) {}
};

struct SchemaError : Error {
  using Error::Error;
};

// Row-major product index: the tuple (t0, .., tk) flattens to
// ((t0 * n1 + t1) * n2 + t2) ..., so the first coordinate is most significant.
inline std::size_t flatten2(elem a, elem b, elem nb) {
  return std::size_t(a) * nb + b;
}

class IndexSpace {
 public:
  IndexSpace() : total_(1) {}

  explicit IndexSpace(std::vector<elem> sizes, std::uint64_t limit = default_max_space)
      : sizes_(std::move(sizes)) {
    total_ = 1;
    for (elem s : sizes_) {
      if (s == 0) {
        total_ = 0;
        continue;
      }
      if (total_ > limit / s) throw SpaceTooLarge(overflow_estimate(limit), limit);
      total_ *= s;
    }
    if (total_ > limit) throw SpaceTooLarge(total_, limit);
  }

  std::size_t size() const { return total_; }
  std::size_t rank() const { return sizes_.size(); }
  const std::vector<elem>& sizes() const { return sizes_; }

  std::size_t flatten(std::span<const elem> tuple) const {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < sizes_.size(); ++k) flat = flat * sizes_[k] + tuple[k];
    return flat;
  }

  void unflatten(std::size_t flat, std::span<elem> out) const {
    for (std::size_t k = sizes_.size(); k-- > 0;) {
      out[k] = elem(flat % sizes_[k]);
      flat /= sizes_[k];
    }
  }

  std::vector<elem> tuple(std::size_t flat) const {
    std::vector<elem> out(sizes_.size());
    unflatten(flat, out);
    return out;
  }

 private:
  std::uint64_t overflow_estimate(std::uint64_t limit) const {
    // Only used for the error message; saturates instead of overflowing.
    std::uint64_t t = 1;
    for (elem s : sizes_) {
      if (s != 0 && t > std::numeric_limits<std::uint64_t>::max() / s) return limit + 1;
      t *= s == 0 ? 1 : s;
    }
    return t;
  }

  std::vector<elem> sizes_;
  std::uint64_t total_;
};

// Fixed PRNG so sampled checks are reproducible across platforms.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection; n > 0.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }
};

enum class CheckMode { exhaustive, sampled };

struct CheckReport {
  bool passed = true;
  std::optional<std::vector<elem>> witness;
  std::uint64_t checked = 0;
  CheckMode mode = CheckMode::exhaustive;
  std::uint64_t seed = 0;
  std::string law;

  explicit operator bool() const { return passed; }
};

struct CheckOptions {
  std::uint64_t max_exhaustive = default_max_space;
  std::uint64_t samples = default_samples;
  std::uint64_t seed = 0;
};

// Checks pred on every tuple of the given shape when the space is small enough,
// otherwise on a seeded sample. The witness is the lexicographically least
// failing tuple seen, which for the exhaustive sweep is the least one overall.
inline CheckReport forall_check(const std::vector<elem>& sizes,
                                const std::function<bool(std::span<const elem>)>& pred,
                                std::string law = {},
                                const CheckOptions& opt = {}) {
  CheckReport rep;
  rep.law = std::move(law);
  rep.seed = opt.seed;

  std::uint64_t total = 1;
  bool overflow = false;
  for (elem s : sizes) {
    if (s == 0) {
      rep.checked = 0;
      return rep;  // empty carrier: vacuously true
    }
    if (total > opt.max_exhaustive / s) overflow = true;
    if (!overflow) total *= s;
  }

  std::vector<elem> tuple(sizes.size());
  if (!overflow && total <= opt.max_exhaustive) {
    rep.mode = CheckMode::exhaustive;
    std::fill(tuple.begin(), tuple.end(), 0);
    for (std::uint64_t i = 0; i < total; ++i) {
      ++rep.checked;
      if (!pred(tuple)) {
        rep.passed = false;
        rep.witness = tuple;
        return rep;
      }
      for (std::size_t k = sizes.size(); k-- > 0;) {
        if (++tuple[k] < sizes[k]) break;
        tuple[k] = 0;
      }
    }
    return rep;
  }

  rep.mode = CheckMode::sampled;
  SplitMix64 rng(opt.seed);
  for (std::uint64_t i = 0; i < opt.samples; ++i) {
    for (std::size_t k = 0; k < sizes.size(); ++k) tuple[k] = elem(rng.below(sizes[k]));
    ++rep.checked;
    if (!pred(tuple)) {
      rep.passed = false;
      if (!rep.witness || tuple < *rep.witness) rep.witness = tuple;
    }
  }
  return rep;
}

// Merge for split checks: the first failing sub-check supplies the verdict,
// witness and law name, so merged reports stay deterministic.
inline CheckReport merge(CheckReport a, const CheckReport& b) {
  a.checked += b.checked;
  if (a.passed && !b.passed) {
    a.passed = false;
    a.witness = b.witness;
    a.law = b.law;
    a.mode = b.mode;
  }
  return a;
}

}  // namespace cact
