// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/training/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "mtkgnn/errors.hpp"
#include "mtkgnn/rng.hpp"

namespace mtkgnn {

namespace {

constexpr char kMagic[8] = {'M', 'T', 'K', 'G', 'N', 'N', 'C', 'K'};
// Guards against absurd allocations when reading a damaged length field.
constexpr std::uint64_t kMaxHeaderBytes = 64ull << 20;

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_uint(const std::string& in, std::size_t pos, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + static_cast<std::size_t>(i)]))
         << (8 * i);
  }
  return v;
}

void put_tensor(std::string& out, const Tensor& t) {
  for (double v : t.data()) put_u64(out, std::bit_cast<std::uint64_t>(v));
}

nlohmann::json entry(const std::string& kind, const std::string& id, const Tensor& t,
                     const std::string& optimizer = {}) {
  nlohmann::json j{{"kind", kind}, {"id", id}, {"shape", t.shape()}};
  if (!optimizer.empty()) j["optimizer"] = optimizer;
  return j;
}

std::string hex(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xf];
  return s;
}

std::uint64_t parse_hex(const std::string& s) {
  if (s.size() != 16) throw DataError("checkpoint: bad hash field");
  return std::stoull(s, nullptr, 16);
}

[[noreturn]] void corrupt(const std::filesystem::path& path, const std::string& why) {
  throw DataError("checkpoint " + path.string() + ": " + why);
}

}  // namespace

VocabHashes VocabHashes::of(const Dataset& ds) {
  return {ds.entities.fingerprint(), ds.relations.fingerprint(),
          ds.attributes.fingerprint()};
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  std::string payload;
  nlohmann::json tensors = nlohmann::json::array();
  for (const auto& [id, p] : ckpt.params) {
    tensors.push_back(entry("param", id, p.value));
    put_tensor(payload, p.value);
  }
  nlohmann::json optimizers = nlohmann::json::object();
  for (const auto& [name, state] : ckpt.optimizers) {
    optimizers[name] = {{"steps", state.steps}};
    for (const auto& [id, mom] : state.moments) {
      tensors.push_back(entry("adam_m", id, mom.m, name));
      put_tensor(payload, mom.m);
      tensors.push_back(entry("adam_v", id, mom.v, name));
      put_tensor(payload, mom.v);
    }
  }
  const nlohmann::json header{
      {"config", ckpt.config},
      {"vocab",
       {{"entities", hex(ckpt.vocab.entities)},
        {"relations", hex(ckpt.vocab.relations)},
        {"attributes", hex(ckpt.vocab.attributes)}}},
      {"epoch", ckpt.epoch},
      {"rng", {{"seed", ckpt.config.seed}, {"next_epoch", ckpt.epoch}}},
      {"optimizers", optimizers},
      {"tensors", tensors},
      {"payload_bytes", payload.size()},
      {"payload_fnv", hex(fnv1a64(payload))}};
  const std::string text = header.dump();

  std::string out(kMagic, sizeof kMagic);
  put_u32(out, kCheckpointVersion);
  put_u64(out, text.size());
  out += text;
  out += payload;

  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot write checkpoint " + tmp.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw DataError("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open checkpoint " + path.string());
  const std::string in((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

  constexpr std::size_t kPrefix = sizeof kMagic + 4 + 8;
  if (in.size() < kPrefix || std::memcmp(in.data(), kMagic, sizeof kMagic) != 0) {
    corrupt(path, "not a checkpoint file");
  }
  const auto version = static_cast<std::uint32_t>(get_uint(in, sizeof kMagic, 4));
  if (version != kCheckpointVersion) {
    corrupt(path, "unsupported format version " + std::to_string(version));
  }
  const std::uint64_t header_len = get_uint(in, sizeof kMagic + 4, 8);
  if (header_len > kMaxHeaderBytes || in.size() - kPrefix < header_len) {
    corrupt(path, "truncated header");
  }

  Checkpoint ckpt;
  try {
    const auto header = nlohmann::json::parse(in.substr(kPrefix, header_len));
    const std::string payload = in.substr(kPrefix + header_len);
    if (payload.size() != header.at("payload_bytes").get<std::size_t>()) {
      corrupt(path, "payload is " + std::to_string(payload.size()) + " bytes, expected " +
                        header.at("payload_bytes").dump());
    }
    if (hex(fnv1a64(payload)) != header.at("payload_fnv").get<std::string>()) {
      corrupt(path, "payload checksum mismatch");
    }
    ckpt.config = header.at("config").get<TrainConfig>();
    const auto& vocab = header.at("vocab");
    ckpt.vocab = {parse_hex(vocab.at("entities").get<std::string>()),
                  parse_hex(vocab.at("relations").get<std::string>()),
                  parse_hex(vocab.at("attributes").get<std::string>())};
    ckpt.epoch = header.at("epoch").get<std::size_t>();
    for (const auto& [name, state] : header.at("optimizers").items()) {
      ckpt.optimizers[name].steps = state.at("steps").get<std::int64_t>();
    }

    std::size_t pos = 0;
    for (const auto& e : header.at("tensors")) {
      const auto shape = e.at("shape").get<std::vector<std::size_t>>();
      std::size_t n = 1;
      for (auto d : shape) n *= d;
      if (n > (payload.size() - pos) / 8) corrupt(path, "tensor data overruns payload");
      std::vector<double> data(n);
      for (std::size_t i = 0; i < n; ++i, pos += 8) {
        data[i] = std::bit_cast<double>(get_uint(payload, pos, 8));
      }
      Tensor t(shape, std::move(data));
      const auto kind = e.at("kind").get<std::string>();
      const auto id = e.at("id").get<std::string>();
      if (kind == "param") {
        ckpt.params.add(id, std::move(t));
      } else if (kind == "adam_m" || kind == "adam_v") {
        auto& mom = ckpt.optimizers[e.at("optimizer").get<std::string>()].moments[id];
        (kind == "adam_m" ? mom.m : mom.v) = std::move(t);
      } else {
        corrupt(path, "unknown tensor kind '" + kind + "'");
      }
    }
    if (pos != payload.size()) corrupt(path, "trailing payload bytes");
  } catch (const nlohmann::json::exception& e) {
    corrupt(path, std::string("bad header: ") + e.what());
  } catch (const UsageError& e) {
    corrupt(path, std::string("bad config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    corrupt(path, e.what());
  }
  return ckpt;
}

void verify_vocab(const Checkpoint& ckpt, const Dataset& ds) {
  const auto now = VocabHashes::of(ds);
  auto check = [](std::uint64_t a, std::uint64_t b, const char* what) {
    if (a != b) {
      throw DataError(std::string("checkpoint was trained on a different ") + what +
                      " vocabulary");
    }
  };
  check(ckpt.vocab.entities, now.entities, "entity");
  check(ckpt.vocab.relations, now.relations, "relation");
  check(ckpt.vocab.attributes, now.attributes, "attribute");
}

Checkpoint load_checkpoint(const std::filesystem::path& path, const Dataset& ds) {
  auto ckpt = load_checkpoint(path);
  verify_vocab(ckpt, ds);
  return ckpt;
}

}  // namespace mtkgnn
