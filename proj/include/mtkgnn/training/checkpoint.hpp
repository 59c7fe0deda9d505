// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "mtkgnn/adam.hpp"
#include "mtkgnn/data/dataset.hpp"
#include "mtkgnn/param_store.hpp"
#include "mtkgnn/training/config.hpp"

namespace mtkgnn {

struct OptimizerState {
  std::int64_t steps = 0;
  std::map<std::string, AdamMoments> moments;
};

struct VocabHashes {
  std::uint64_t entities = 0;
  std::uint64_t relations = 0;
  std::uint64_t attributes = 0;

  static VocabHashes of(const Dataset& ds);
  bool operator==(const VocabHashes&) const = default;
};

// Everything needed to evaluate a model or continue its training bit for
// bit. Per-epoch random streams are derived from (seed, epoch), so the seed
// in `config` plus `epoch` is the complete RNG state.
struct Checkpoint {
  TrainConfig config;
  ParamStore params;
  std::map<std::string, OptimizerState> optimizers;
  VocabHashes vocab;
  std::size_t epoch = 0;  // completed epochs
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

// Binary layout, little-endian:
//   8 bytes  magic "MTKGNNCK"
//   u32      format version
//   u64      header length L
//   L bytes  JSON header: config, vocab hashes, epoch, rng state, and the
//            name/shape of every tensor in payload order
//   payload  raw float64 tensors, in header order
void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
// Throws DataError on bad magic, unsupported version or a truncated or
// otherwise corrupt file.
Checkpoint load_checkpoint(const std::filesystem::path& path);
// Throws DataError when the checkpoint was trained on different vocabularies.
void verify_vocab(const Checkpoint& ckpt, const Dataset& ds);
Checkpoint load_checkpoint(const std::filesystem::path& path, const Dataset& ds);

}  // namespace mtkgnn
