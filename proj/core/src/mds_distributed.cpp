#include "powergraph/mds_distributed.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "powergraph/errors.hpp"
#include "powergraph/random.hpp"
#include "powergraph/sim/simulator.hpp"

namespace powergraph {

using sim::Inbox;
using sim::Message;
using sim::NodeContext;
using sim::Outbox;
using sim::Payload;
using sim::Reader;

namespace {

std::size_t neighbor_index(std::span<const Vertex> nbrs, Vertex u) {
  return static_cast<std::size_t>(std::lower_bound(nbrs.begin(), nbrs.end(), u) - nbrs.begin());
}

double log_n(std::size_t n) { return n <= 1 ? 0.0 : std::log(static_cast<double>(n)); }

// Minifloat sample: one word of biased exponent, then the mantissa words.
// Codes compare like the values they stand for; the all-ones code is +inf.
class SampleCodec {
 public:
  SampleCodec(std::size_t word_bits, std::size_t precision_words)
      : word_bits_(word_bits),
        mantissa_words_(precision_words - 1),
        mantissa_bits_(std::min<std::size_t>(mantissa_words_ * word_bits, 52)) {
    const std::int64_t top = (std::int64_t{1} << word_bits_) - 1;
    bias_ = top >= 11 ? top - 5 : (top + 1) / 2;
    infinity_ = (static_cast<std::uint64_t>(top) << mantissa_bits_) | mantissa_mask();
  }

  std::uint64_t infinity() const { return infinity_; }

  std::uint64_t encode(double x) const {
    int exp = 0;
    const double frac = std::frexp(x, &exp);
    std::int64_t e = exp - 1 + bias_;
    auto m = static_cast<std::uint64_t>(std::llround(std::ldexp(2 * frac - 1, static_cast<int>(mantissa_bits_))));
    if (m > mantissa_mask()) {
      m = 0;
      ++e;
    }
    if (e < 0) return 0;
    const std::uint64_t code = (static_cast<std::uint64_t>(e) << mantissa_bits_) | m;
    return std::min(code, infinity_ - 1);
  }

  double decode(std::uint64_t code) const {
    const auto e = static_cast<std::int64_t>(code >> mantissa_bits_);
    const double m = std::ldexp(static_cast<double>(code & mantissa_mask()), -static_cast<int>(mantissa_bits_));
    return std::ldexp(1.0 + m, static_cast<int>(e - bias_));
  }

  void put(Payload& p, std::uint64_t code) const {
    p.put(code >> mantissa_bits_);
    p.put_wide(code & mantissa_mask(), mantissa_words_, word_bits_);
  }
  std::uint64_t get(Reader& r) const {
    const std::uint64_t e = r.get();
    return (e << mantissa_bits_) | r.get_wide(mantissa_words_, word_bits_);
  }

 private:
  std::uint64_t mantissa_mask() const { return (std::uint64_t{1} << mantissa_bits_) - 1; }

  std::size_t word_bits_;
  std::size_t mantissa_words_;
  std::size_t mantissa_bits_;
  std::int64_t bias_ = 0;
  std::uint64_t infinity_ = 0;
};

enum class CountMode {
  Broadcast,  // count keyed vertices in N2[x] for every x
  Targeted,   // count vertices in N2[x] whose key is x
};

// Counts |{w in N2[x] : w accepted by x}| at every node x. Runs over
// length() consecutive steps: one key round, the list stage (exact counts
// for low degree), then optionally the raw-sample stage and always the
// relay-min stage. Raw samples stay cached across counts in a phase, so a
// later Targeted count over a subset of the keyed vertices skips them.
class TwoHopCounter {
 public:
  TwoHopCounter(const NodeContext& ctx, const ResolvedEstimate& cfg)
      : id_(ctx.id),
        nbrs_(ctx.neighbors),
        bandwidth_(ctx.model.bandwidth_words),
        cfg_(cfg),
        codec_(ctx.word_bits, cfg.precision_words),
        per_message_(ctx.model.bandwidth_words / cfg.precision_words),
        nbr_key_(ctx.neighbors.size()),
        nbr_codes_(ctx.neighbors.size()) {
    const std::size_t B = bandwidth_;
    const std::size_t T = cfg.exact_threshold;
    list_rounds_ = 0;
    if (T > 0) {
      const std::size_t longest = T - 1;
      const std::size_t head = B - 2;
      list_rounds_ = 1 + (longest > head ? (longest - head + B - 1) / B : 0);
    }
    sample_rounds_ = (cfg.samples + per_message_ - 1) / per_message_;
  }

  std::size_t length(bool with_samples) const {
    return 1 + list_rounds_ + (with_samples ? 2 : 1) * sample_rounds_;
  }

  void draw(std::mt19937_64& rng) {
    own_codes_.resize(cfg_.samples);
    for (auto& c : own_codes_) c = codec_.encode(exponential(rng));
  }

  void start(CountMode mode, std::optional<Vertex> key, bool with_samples) {
    mode_ = mode;
    key_ = key;
    with_samples_ = with_samples;
    std::fill(nbr_key_.begin(), nbr_key_.end(), std::nullopt);
    overflow_ = false;
    received_.clear();
    pending_.assign(nbrs_.size(), 0);
    outgoing_.clear();
  }

  void send(std::size_t step, Outbox& out) {
    const auto [stage, k] = locate(step);
    switch (stage) {
      case Stage::Key:
        if (key_) {
          Payload p;
          p.put(mode_ == CountMode::Broadcast ? 1 : *key_);
          out.broadcast(p);
        }
        break;
      case Stage::List:
        if (k == 0) prepare_lists();
        send_lists(k, out);
        break;
      case Stage::Raw:
        if (key_) {
          Payload p;
          const std::size_t lo = k * per_message_;
          const std::size_t hi = std::min(lo + per_message_, own_codes_.size());
          for (std::size_t j = lo; j < hi; ++j) codec_.put(p, own_codes_[j]);
          out.broadcast(p);
        }
        break;
      case Stage::Relay:
        if (k == 0) prepare_minima();
        send_minima(k, out);
        break;
    }
  }

  void receive(std::size_t step, const Inbox& in) {
    const auto [stage, k] = locate(step);
    switch (stage) {
      case Stage::Key:
        for (const Message& m : in) nbr_key_[neighbor_index(nbrs_, m.from)] = static_cast<Vertex>(m.words[0]);
        break;
      case Stage::List:
        for (const Message& m : in) {
          const std::size_t i = neighbor_index(nbrs_, m.from);
          Reader r(m.words);
          if (k == 0) {
            if (r.get() == 0) {
              overflow_ = true;
              continue;
            }
            pending_[i] = r.get();
          }
          while (!r.done()) {
            received_.push_back(static_cast<Vertex>(r.get()));
            --pending_[i];
          }
        }
        break;
      case Stage::Raw:
        for (const Message& m : in) {
          auto& codes = nbr_codes_[neighbor_index(nbrs_, m.from)];
          Reader r(m.words);
          while (!r.done()) codes.push_back(codec_.get(r));
        }
        break;
      case Stage::Relay:
        for (const Message& m : in) {
          Reader r(m.words);
          for (std::size_t j = k * per_message_; !r.done(); ++j) minima_[j] = std::min(minima_[j], codec_.get(r));
        }
        break;
    }
  }

  // Valid once all length() steps have run.
  bool exact_ok() const {
    return nbrs_.size() < cfg_.exact_threshold && !overflow_;
  }
  double exact_count() const {
    std::vector<Vertex> all = received_;
    all.insert(all.end(), own_list_.begin(), own_list_.end());
    std::sort(all.begin(), all.end());
    return static_cast<double>(std::unique(all.begin(), all.end()) - all.begin());
  }
  double sampled() const {
    if (minima_.empty() || minima_[0] == codec_.infinity()) return 0.0;
    double sum = 0.0;
    for (std::uint64_t c : minima_) sum += codec_.decode(c);
    return static_cast<double>(minima_.size()) / sum;
  }

 private:
  enum class Stage { Key, List, Raw, Relay };

  struct Outgoing {
    std::optional<Vertex> to;  // empty: every neighbor
    std::vector<Vertex> ids;
    std::vector<std::uint64_t> minima;
  };

  std::pair<Stage, std::size_t> locate(std::size_t step) const {
    std::size_t k = step - 1;
    if (k == 0) return {Stage::Key, 0};
    k -= 1;
    if (k < list_rounds_) return {Stage::List, k};
    k -= list_rounds_;
    if (with_samples_) {
      if (k < sample_rounds_) return {Stage::Raw, k};
      k -= sample_rounds_;
    }
    return {Stage::Relay, k};
  }

  bool accepts(const std::optional<Vertex>& key, Vertex x) const {
    return key && (mode_ == CountMode::Broadcast || *key == x);
  }

  // Receivers of this node's relays with the keyed members of N1[self] each
  // one accepts; the node's own share is split off.
  template <typename F>
  void for_each_receiver(F&& f) {
    const Vertex self = id_;
    std::vector<Vertex> keyed_all;
    if (key_) keyed_all.push_back(self);
    for (std::size_t i = 0; i < nbr_key_.size(); ++i) {
      if (nbr_key_[i]) keyed_all.push_back(nbrs_[i]);
    }
    std::sort(keyed_all.begin(), keyed_all.end());
    auto key_of = [&](Vertex w) {
      return w == self ? key_ : nbr_key_[neighbor_index(nbrs_, w)];
    };
    auto members_for = [&](Vertex x) {
      std::vector<Vertex> out;
      for (Vertex w : keyed_all) {
        if (accepts(key_of(w), x)) out.push_back(w);
      }
      return out;
    };
    if (mode_ == CountMode::Broadcast) {
      f(std::optional<Vertex>{}, keyed_all, true);
      return;
    }
    f(std::optional<Vertex>{self}, members_for(self), false);
    std::vector<Vertex> targets;
    for (Vertex w : keyed_all) {
      const Vertex t = *key_of(w);
      if (t != self && std::binary_search(nbrs_.begin(), nbrs_.end(), t)) targets.push_back(t);
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (Vertex t : targets) f(std::optional<Vertex>{t}, members_for(t), true);
  }

  void prepare_lists() {
    own_list_.clear();
    for_each_receiver([&](std::optional<Vertex> to, std::vector<Vertex> ids, bool remote) {
      if (!to || *to == id_) own_list_ = ids;
      if (remote && !ids.empty()) outgoing_.push_back({to, std::move(ids), {}});
    });
  }

  void send_lists(std::size_t k, Outbox& out) {
    const std::size_t B = bandwidth_;
    for (const Outgoing& o : outgoing_) {
      Payload p;
      std::size_t lo = 0, hi = 0;
      if (o.ids.size() >= cfg_.exact_threshold) {
        if (k > 0) continue;
        p.put(0);
      } else {
        if (k == 0) {
          p.put(1);
          p.put(o.ids.size());
          hi = std::min(o.ids.size(), B - 2);
        } else {
          lo = (B - 2) + (k - 1) * B;
          if (lo >= o.ids.size()) continue;
          hi = std::min(o.ids.size(), lo + B);
        }
        for (std::size_t j = lo; j < hi; ++j) p.put(o.ids[j]);
      }
      if (o.to) {
        out.send(*o.to, p);
      } else {
        out.broadcast(p);
      }
    }
  }

  std::vector<std::uint64_t> minima_over(const std::vector<Vertex>& ids) const {
    std::vector<std::uint64_t> m(cfg_.samples, codec_.infinity());
    for (Vertex w : ids) {
      const auto& codes = w == id_ ? own_codes_ : nbr_codes_[neighbor_index(nbrs_, w)];
      if (codes.size() != cfg_.samples) fail(ErrorKind::Contract, "relay is missing samples of a keyed neighbor");
      for (std::size_t j = 0; j < m.size(); ++j) m[j] = std::min(m[j], codes[j]);
    }
    return m;
  }

  void prepare_minima() {
    outgoing_.clear();
    minima_.assign(cfg_.samples, codec_.infinity());
    for_each_receiver([&](std::optional<Vertex> to, const std::vector<Vertex>& ids, bool remote) {
      if (ids.empty()) return;
      auto m = minima_over(ids);
      if (!to || *to == id_) minima_ = m;
      if (remote) outgoing_.push_back({to, {}, std::move(m)});
    });
  }

  void send_minima(std::size_t k, Outbox& out) {
    const std::size_t lo = k * per_message_;
    for (const Outgoing& o : outgoing_) {
      if (lo >= o.minima.size()) continue;
      Payload p;
      const std::size_t hi = std::min(lo + per_message_, o.minima.size());
      for (std::size_t j = lo; j < hi; ++j) codec_.put(p, o.minima[j]);
      if (o.to) {
        out.send(*o.to, p);
      } else {
        out.broadcast(p);
      }
    }
  }

  Vertex id_;
  std::span<const Vertex> nbrs_;
  std::size_t bandwidth_;
  ResolvedEstimate cfg_;
  SampleCodec codec_;
  std::size_t per_message_;
  std::size_t list_rounds_ = 0;
  std::size_t sample_rounds_ = 0;

  CountMode mode_ = CountMode::Broadcast;
  std::optional<Vertex> key_;
  bool with_samples_ = true;
  std::vector<std::optional<Vertex>> nbr_key_;

  std::vector<Outgoing> outgoing_;
  std::vector<Vertex> own_list_;
  std::vector<Vertex> received_;
  std::vector<std::size_t> pending_;
  bool overflow_ = false;

  std::vector<std::uint64_t> own_codes_;
  std::vector<std::vector<std::uint64_t>> nbr_codes_;
  std::vector<std::uint64_t> minima_;
};

class EstimateNode {
 public:
  EstimateNode(NodeContext ctx, const ResolvedEstimate& cfg, bool in_u)
      : ctx_(std::move(ctx)), counter_(ctx_, cfg), in_u_(in_u), length_(counter_.length(true)) {
    counter_.draw(ctx_.rng);
  }

  void send(std::size_t round, Outbox& out) {
    if (round == 1) counter_.start(CountMode::Broadcast, in_u_ ? std::optional<Vertex>{ctx_.id} : std::nullopt, true);
    counter_.send(round, out);
  }
  void receive(std::size_t round, const Inbox& in) {
    counter_.receive(round, in);
    round_ = round;
  }
  bool halted() const { return round_ >= length_; }
  bool idle() const { return false; }

  bool exact() const { return counter_.exact_ok(); }
  double value() const { return exact() ? counter_.exact_count() : counter_.sampled(); }

 private:
  NodeContext ctx_;
  TwoHopCounter counter_;
  bool in_u_;
  std::size_t length_;
  std::size_t round_ = 0;
};

// One phase of the dominating-set loop; halts after a fixed schedule.
//   count C_v | 4 rounds max-flood of ρ | 2 rounds rank minima |
//   count votes (samples reused) | 2 rounds coverage
class MdsPhaseNode {
 public:
  MdsPhaseNode(NodeContext ctx, const ResolvedEstimate& cfg, bool covered)
      : ctx_(std::move(ctx)), counter_(ctx_, cfg), covered_(covered) {
    counter_.draw(ctx_.rng);
    const std::uint64_t n = ctx_.n;
    rank_bound_ = n > 65535 ? ~std::uint64_t{0} : n * n * n * n;
    rank_words_ = sim::words_for_bound(rank_bound_, ctx_.word_bits);
    word_max_ = ctx_.word_bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << ctx_.word_bits) - 1;
    count_end_ = counter_.length(true);
    rank_end_ = count_end_ + 6;
    vote_end_ = rank_end_ + counter_.length(false);
    length_ = vote_end_ + 2;
  }

  void send(std::size_t round, Outbox& out) {
    if (round <= count_end_) {
      if (round == 1) counter_.start(CountMode::Broadcast, key_if(!covered_), true);
      counter_.send(round, out);
    } else if (round <= count_end_ + 4) {
      if (rho_max_ > 0) broadcast_word(out, rho_max_);
    } else if (round == count_end_ + 5) {
      if (candidate_) {
        rank_ = uniform_below(ctx_.rng, rank_bound_);
        best_ = {rank_, ctx_.id};
        Payload p;
        p.put_wide(rank_, rank_words_, ctx_.word_bits);
        out.broadcast(p);
      }
    } else if (round == rank_end_) {
      if (best_) {
        Payload p;
        p.put_wide(best_->first, rank_words_, ctx_.word_bits);
        p.put(best_->second);
        out.broadcast(p);
      }
    } else if (round <= vote_end_) {
      if (round == rank_end_ + 1) {
        std::optional<Vertex> vote;
        if (!covered_ && best_) vote = best_->second;
        counter_.start(CountMode::Targeted, vote, false);
      }
      counter_.send(round - rank_end_, out);
    } else if (round == vote_end_ + 1) {
      if (joined_) broadcast_word(out, 1);
    } else {
      if (near_join_) broadcast_word(out, 1);
    }
  }

  void receive(std::size_t round, const Inbox& in) {
    round_ = round;
    if (round <= count_end_) {
      counter_.receive(round, in);
      if (round == count_end_) {
        exact_ = counter_.exact_ok();
        estimate_ = exact_ ? counter_.exact_count() : counter_.sampled();
        rho_ = rho_code(estimate_);
        rho_max_ = rho_;
      }
    } else if (round <= count_end_ + 4) {
      for (const Message& m : in) rho_max_ = std::max<std::uint64_t>(rho_max_, m.words[0]);
      if (round == count_end_ + 4) candidate_ = rho_ > 0 && rho_ == rho_max_;
    } else if (round == count_end_ + 5) {
      for (const Message& m : in) {
        Reader r(m.words);
        offer({r.get_wide(rank_words_, ctx_.word_bits), m.from});
      }
    } else if (round == rank_end_) {
      for (const Message& m : in) {
        Reader r(m.words);
        const std::uint64_t rank = r.get_wide(rank_words_, ctx_.word_bits);
        offer({rank, static_cast<Vertex>(r.get())});
      }
    } else if (round <= vote_end_) {
      counter_.receive(round - rank_end_, in);
      if (round == vote_end_ && candidate_) {
        // The tally is counted the same way as C_v so that a candidate which
        // receives every vote always clears the bar.
        tally_ = exact_ ? counter_.exact_count() : counter_.sampled();
        joined_ = 8 * tally_ >= estimate_;
      }
    } else if (round == vote_end_ + 1) {
      near_join_ = joined_ || !in.empty();
      if (near_join_) covered_ = true;
    } else {
      if (!in.empty()) covered_ = true;
    }
  }

  bool halted() const { return round_ >= length_; }
  bool idle() const { return false; }

  bool covered() const { return covered_; }
  bool joined() const { return joined_; }
  bool candidate() const { return candidate_; }
  bool exact() const { return exact_; }
  double estimate() const { return estimate_; }

 private:
  std::optional<Vertex> key_if(bool b) const { return b ? std::optional<Vertex>{ctx_.id} : std::nullopt; }

  static void broadcast_word(Outbox& out, sim::Word w) {
    Payload p;
    p.put(w);
    out.broadcast(p);
  }

  // 0 for an empty count, else 1 + log2 of the next power of two >= x.
  std::uint64_t rho_code(double x) const {
    if (x <= 0) return 0;
    std::uint64_t k = 0;
    for (double p = 1; p < x; p *= 2) ++k;
    return std::min(k + 1, word_max_);
  }

  void offer(std::pair<std::uint64_t, Vertex> o) {
    if (!best_ || o < *best_) best_ = o;
  }

  NodeContext ctx_;
  TwoHopCounter counter_;
  bool covered_;
  std::uint64_t rank_bound_ = 1;
  std::size_t rank_words_ = 1;
  std::uint64_t word_max_ = 1;
  std::size_t count_end_ = 0, rank_end_ = 0, vote_end_ = 0, length_ = 0;
  std::size_t round_ = 0;

  bool exact_ = false;
  double estimate_ = 0;
  std::uint64_t rho_ = 0, rho_max_ = 0;
  bool candidate_ = false;
  std::uint64_t rank_ = 0;
  std::optional<std::pair<std::uint64_t, Vertex>> best_;
  double tally_ = 0;
  bool joined_ = false;
  bool near_join_ = false;
};

}  // namespace

ResolvedEstimate resolve_estimate(const EstimateConfig& cfg, std::size_t n, const sim::Model& model) {
  if (cfg.epsilon <= 0 || cfg.epsilon >= Rational(1, 4)) {
    fail(ErrorKind::Config, "estimator epsilon must lie in (0, 1/4), got " + format_rational(cfg.epsilon));
  }
  if (cfg.precision_words < 2) fail(ErrorKind::Config, "a sample needs at least 2 words");
  if (cfg.precision_words > model.bandwidth_words) {
    fail(ErrorKind::Config, "a sample of " + std::to_string(cfg.precision_words) + " words does not fit a " +
                                std::to_string(model.bandwidth_words) + "-word message");
  }
  if (cfg.samples && *cfg.samples == 0) fail(ErrorKind::Config, "sample count must be positive");
  ResolvedEstimate r;
  r.epsilon = to_double(cfg.epsilon);
  r.precision_words = cfg.precision_words;
  const double ln = log_n(n);
  r.samples = cfg.samples ? *cfg.samples
                          : std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(6.0 * ln / (r.epsilon * r.epsilon))));
  r.exact_threshold = cfg.exact_threshold ? *cfg.exact_threshold
                                          : std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(8.0 * ln)));
  return r;
}

double estimate_failure_bound(const ResolvedEstimate& r) {
  return std::exp(-r.epsilon * r.epsilon * static_cast<double>(r.samples) / 3.0);
}

TwoHopEstimates estimate_2hop_counts(const Graph& g, std::span<const Vertex> U, const EstimateConfig& cfg,
                                     std::uint64_t seed, const sim::Model& model, const sim::RunOptions& run) {
  const std::size_t n = g.n();
  const ResolvedEstimate r = resolve_estimate(cfg, n, model);
  std::vector<char> in_u(n, 0);
  for (Vertex u : U) {
    if (u >= n) fail(ErrorKind::Input, "vertex " + std::to_string(u) + " is not in the graph");
    in_u[u] = 1;
  }
  auto result = sim::run(
      g, [&](NodeContext ctx) { return EstimateNode(std::move(ctx), r, in_u[ctx.id] != 0); }, model, seed, run);
  TwoHopEstimates out;
  out.value.resize(n);
  out.exact.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    out.value[v] = result.nodes[v].value();
    out.exact[v] = result.nodes[v].exact();
  }
  out.stats = result.stats;
  return out;
}

MdsRun g2mds_logd(const Graph& g, const MdsOptions& options) {
  const std::size_t n = g.n();
  MdsRun out;
  if (n == 0) {
    out.solution = make_solution(g, ProblemKind::DS2, {});
    return out;
  }
  if (!is_connected(g)) fail(ErrorKind::Connectivity, "g2mds_logd needs a connected graph");
  const ResolvedEstimate r = resolve_estimate(options.estimate, n, options.model);
  std::vector<char> covered(n, 0);
  std::vector<Vertex> members;
  std::size_t stall = 0;
  for (std::uint64_t phase = 0;; ++phase) {
    MdsPhase ph;
    for (Vertex v = 0; v < n; ++v) {
      if (!covered[v]) ph.uncovered.push_back(v);
    }
    if (ph.uncovered.empty()) break;
    auto result = sim::run(
        g, [&](NodeContext ctx) { return MdsPhaseNode(std::move(ctx), r, covered[ctx.id] != 0); }, options.model,
        splitmix64(options.seed + phase), options.run);
    ph.estimate.resize(n);
    ph.exact.resize(n);
    for (Vertex v = 0; v < n; ++v) {
      const auto& node = result.nodes[v];
      ph.estimate[v] = node.estimate();
      ph.exact[v] = node.exact();
      if (node.candidate()) ph.candidates.push_back(v);
      if (node.joined()) ph.joined.push_back(v);
      covered[v] = node.covered();
    }
    ph.stats = result.stats;
    out.stats += result.stats;
    members.insert(members.end(), ph.joined.begin(), ph.joined.end());
    stall = ph.joined.empty() ? stall + 1 : 0;
    out.phases.push_back(std::move(ph));
    if (stall > options.stall_cap) {
      fail(ErrorKind::Nontermination,
           "no vertex joined in " + std::to_string(stall) + " consecutive phases");
    }
  }
  out.solution = make_solution(g, ProblemKind::DS2, std::move(members));
  return out;
}

double harmonic_number(std::size_t k) {
  double h = 0;
  for (std::size_t i = k; i >= 1; --i) h += 1.0 / static_cast<double>(i);
  return h;
}

}  // namespace powergraph
