// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace mtkgnn {

// Counter-based SplitMix64 stream.
//
// A stream is identified by a 64-bit key. The k-th output (k = 1, 2, ...) is
// mix64(key + k * 0x9E3779B97F4A7C15), where mix64 is the SplitMix64
// finalizer. Streams are cheap to derive with fork(), which lets each
// consumer (parameter init, dropout, batch sampling, ...) own an independent
// stream so that adding a consumer never perturbs the others.
//
// Floating-point draws are built only from the integer stream, so a seed
// produces the same uniform/normal values on every platform that has an
// IEEE-754 double and a correctly rounded log/sqrt/cos.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static Rng from_state(std::uint64_t key, std::uint64_t counter);

  Rng fork(std::uint64_t tag) const;
  Rng fork(std::string_view tag) const;

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  // Uniform on {0, ..., n-1}; n must be positive. Unbiased (rejection).
  std::size_t uniform_index(std::size_t n);
  // Standard normal via Box-Muller; one draw consumes two outputs.
  double normal();
  bool bernoulli(double p);

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  Rng(std::uint64_t key, std::uint64_t counter, int);

  std::uint64_t key_;
  std::uint64_t counter_;
};

std::uint64_t mix64(std::uint64_t x);
// 64-bit FNV-1a; used for stream tags and vocabulary fingerprints.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);

}  // namespace mtkgnn
