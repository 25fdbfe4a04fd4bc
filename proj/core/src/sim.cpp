#include <cstdlib>
#include <string>

#include "powergraph/errors.hpp"
#include "powergraph/sim/simulator.hpp"

namespace powergraph::sim {

const char* to_string(Variant v) { return v == Variant::Congest ? "congest" : "clique"; }

std::size_t word_bits_for(std::size_t n) {
  std::size_t bits = 0;
  while (bits < 64 && (std::uint64_t{1} << bits) < static_cast<std::uint64_t>(n) + 1) ++bits;
  return bits == 0 ? 1 : bits;
}

std::size_t words_for_bound(std::uint64_t bound, std::size_t word_bits) {
  // Smallest k with 2^(k·word_bits) >= bound.
  std::size_t k = 1;
  while (k * word_bits < 64 && (std::uint64_t{1} << (k * word_bits)) < bound) ++k;
  return k;
}

std::size_t default_round_cap(std::size_t n) {
  if (const char* env = std::getenv("POWERGRAPH_ROUND_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    fail(ErrorKind::Config, std::string("POWERGRAPH_ROUND_CAP is not a positive integer: ") + env);
  }
  std::size_t cap = 100 * n * n;
  return cap < 100 ? 100 : cap;
}

Payload& Payload::put(Word w) {
  if (size_ >= kCapacity) fail(ErrorKind::Encoding, "payload exceeds fixed capacity");
  data_[size_++] = w;
  return *this;
}

Payload& Payload::put_wide(std::uint64_t value, std::size_t words, std::size_t word_bits) {
  const Word mask = word_bits >= 64 ? ~Word{0} : ((Word{1} << word_bits) - 1);
  for (std::size_t i = 0; i < words; ++i) {
    put(value & mask);
    value = word_bits >= 64 ? 0 : value >> word_bits;
  }
  if (value != 0) fail(ErrorKind::Encoding, "value does not fit in the requested word count");
  return *this;
}

Word Reader::get() {
  if (pos_ >= words_.size()) fail(ErrorKind::Encoding, "read past end of message");
  return words_[pos_++];
}

std::uint64_t Reader::get_wide(std::size_t words, std::size_t word_bits) {
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < words; ++i) {
    std::uint64_t part = get();
    if (i * word_bits < 64) value |= part << (i * word_bits);
  }
  return value;
}

namespace detail {

Network::Network(const Graph& g, const Model& model, const RunOptions& options)
    : g_(g),
      model_(model),
      options_(options),
      word_bits_(word_bits_for(g.n())),
      start_(g.n() + 1, 0),
      edge_stamp_(g.n(), 0) {}

void Network::begin_round(std::size_t round) {
  round_ = round;
  pool_.clear();
  envelopes_.clear();
}

void Network::send(Vertex from, Vertex to, const Payload& p) {
  auto where = [&] { return "node " + std::to_string(from) + " round " + std::to_string(round_); };
  if (to >= g_.n() || to == from) {
    fail(ErrorKind::Topology, where() + ": invalid receiver " + std::to_string(to));
  }
  if (model_.variant == Variant::Congest && !g_.has_edge(from, to)) {
    fail(ErrorKind::Topology, where() + ": " + std::to_string(to) + " is not a neighbor");
  }
  // One message per ordered pair per round.
  const std::uint64_t key = static_cast<std::uint64_t>(round_) * (g_.n() + 1) + from + 1;
  if (edge_stamp_[to] == key) {
    fail(ErrorKind::Topology, where() + ": second message to " + std::to_string(to));
  }
  const Word limit = word_bits_ >= 64 ? ~Word{0} : ((Word{1} << word_bits_) - 1);
  for (Word w : p.words()) {
    if (w > limit) {
      fail(ErrorKind::Encoding, where() + ": value " + std::to_string(w) + " exceeds the " +
                                    std::to_string(word_bits_) + "-bit word");
    }
  }
  const std::size_t bits = p.size() * word_bits_;
  if (p.size() > model_.bandwidth_words) {
    if (options_.strict_bandwidth) {
      fail(ErrorKind::Bandwidth, where() + ": message of " + std::to_string(bits) +
                                     " bits exceeds bandwidth of " +
                                     std::to_string(model_.bandwidth_words * word_bits_) +
                                     " bits");
    }
    ++stats_.violations;
    return;
  }
  edge_stamp_[to] = key;
  envelopes_.push_back({from, to, pool_.size(), p.size()});
  pool_.insert(pool_.end(), p.words().begin(), p.words().end());
  ++stats_.messages;
  if (bits > stats_.max_message_bits) stats_.max_message_bits = bits;
}

void Network::deliver() {
  const std::size_t n = g_.n();
  std::fill(start_.begin(), start_.end(), 0);
  for (const auto& e : envelopes_) ++start_[e.to + 1];
  for (std::size_t v = 0; v < n; ++v) start_[v + 1] += start_[v];
  sorted_.resize(envelopes_.size());
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  for (const auto& e : envelopes_) {
    sorted_[fill[e.to]++] = Message{e.from, std::span<const Word>(pool_.data() + e.offset, e.length)};
  }
}

Inbox Network::inbox(Vertex v) const {
  return Inbox(std::span<const Message>(sorted_.data() + start_[v], start_[v + 1] - start_[v]));
}

}  // namespace detail

}  // namespace powergraph::sim
