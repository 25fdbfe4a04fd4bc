#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>

#include "powergraph/graph.hpp"

namespace powergraph::sim {

enum class Variant { Congest, Clique };

const char* to_string(Variant v);

struct Model {
  Variant variant = Variant::Congest;
  std::size_t bandwidth_words = 8;
};

// ⌈log2(n+1)⌉, at least 1.
std::size_t word_bits_for(std::size_t n);

using Word = std::uint64_t;

struct RoundStats {
  std::size_t rounds = 0;
  std::size_t messages = 0;
  std::size_t max_message_bits = 0;
  std::size_t violations = 0;

  RoundStats& operator+=(const RoundStats& o) {
    rounds += o.rounds;
    messages += o.messages;
    max_message_bits = max_message_bits > o.max_message_bits ? max_message_bits : o.max_message_bits;
    violations += o.violations;
    return *this;
  }
  bool operator==(const RoundStats&) const = default;
};

// Fixed-capacity sequence of words making up one message.
class Payload {
 public:
  static constexpr std::size_t kCapacity = 32;

  Payload& put(Word w);
  // Splits `value` into `words` little-endian chunks of `word_bits` bits.
  // Throws Error(Encoding) if the value does not fit.
  Payload& put_wide(std::uint64_t value, std::size_t words, std::size_t word_bits);
  std::span<const Word> words() const { return {data_.data(), size_}; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  void clear() { size_ = 0; }

 private:
  std::array<Word, kCapacity> data_{};
  std::size_t size_ = 0;
};

// Sequential decoder over a received message.
class Reader {
 public:
  explicit Reader(std::span<const Word> words) : words_(words) {}
  Word get();
  std::uint64_t get_wide(std::size_t words, std::size_t word_bits);
  bool done() const { return pos_ >= words_.size(); }
  std::size_t remaining() const { return words_.size() - pos_; }

 private:
  std::span<const Word> words_;
  std::size_t pos_ = 0;
};

// Number of words needed for values below `bound` (bound >= 1).
std::size_t words_for_bound(std::uint64_t bound, std::size_t word_bits);

struct Message {
  Vertex from;
  std::span<const Word> words;
};

// Everything a node knows at start-up besides its algorithm-specific input.
struct NodeContext {
  Vertex id = 0;
  std::size_t n = 0;
  std::span<const Vertex> neighbors;
  std::size_t word_bits = 1;
  Model model;
  std::mt19937_64 rng;
};

struct RunOptions {
  // Default cap is 100·n² (at least 100), overridable by POWERGRAPH_ROUND_CAP.
  std::optional<std::size_t> round_cap;
  // When false, oversize messages are dropped and counted as violations
  // instead of raising Error(Bandwidth).
  bool strict_bandwidth = true;
};

std::size_t default_round_cap(std::size_t n);

}  // namespace powergraph::sim
