#include "ufg/growth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "ufg/config.hpp"
#include "ufg/errors.hpp"

namespace ufg {

namespace {

constexpr std::size_t kEntryOverhead = 96;  // index node + vector slots, roughly

struct Sphere {
  std::vector<Isometry> elems;
  std::vector<Word> words;
  std::unordered_multimap<std::uint64_t, std::uint32_t> index;
  std::size_t bytes = 0;

  bool contains(const Isometry& g, std::uint64_t h) const {
    auto [lo, hi] = index.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      if (elems[it->second] == g) return true;
    }
    return false;
  }

  void add(Isometry g, std::uint64_t h, Word w, bool track) {
    bytes += g.limb_bytes() + kEntryOverhead + (track ? w.size() * sizeof(Letter) : 0);
    index.emplace(h, static_cast<std::uint32_t>(elems.size()));
    elems.push_back(std::move(g));
    if (track) words.push_back(std::move(w));
  }
};

struct Candidate {
  Isometry g;
  std::uint64_t hash;
  std::uint32_t parent;
  std::uint32_t letter;
  bool oversized;
};

void expand_range(const Sphere& from, const std::vector<Isometry>& letters, std::size_t lo, std::size_t hi,
                  std::size_t bit_limit, std::vector<Candidate>& out) {
  out.reserve((hi - lo) * letters.size());
  for (std::size_t i = lo; i < hi; ++i) {
    for (std::size_t l = 0; l < letters.size(); ++l) {
      Isometry g = compose(from.elems[i], letters[l]);
      const bool big = g.bit_size() > bit_limit;
      const std::uint64_t h = g.hash();
      out.push_back({std::move(g), h, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(l), big});
    }
  }
}

int resolve_threads(int t) {
  if (t > 0) return t;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

BallCensus enumerate_ball(const GeneratingSet& s, int k, const EnumerationOptions& opt, const ElementVisitor& visit) {
  if (k < 0) throw InvalidInput("radius must be nonnegative");
  BallCensus census;
  census.requested_radius = k;
  census.generating_set_hash = s.hash();
  const std::vector<Isometry>& letters = s.closure_matrices();
  const bool track = opt.track_words;
  const int threads = resolve_threads(opt.threads);

  static const Word kEmpty;
  Sphere prev;
  Sphere cur;
  cur.add(Isometry(), Isometry().hash(), Word{}, track);
  census.counts.push_back(1);
  census.peak_bytes = cur.bytes;
  if (visit && !visit(BallElement{cur.elems[0], track ? cur.words[0] : kEmpty, 0})) {
    census.stop_reason = "stopped by visitor";
    return census;
  }
  for (int r = 0; r < k; ++r) {
    // Candidates are produced in parallel over contiguous slices and merged
    // sequentially in slice order, so the result matches a serial run.
    const std::size_t n = cur.elems.size();
    const std::size_t shards = (threads > 1 && n >= 64) ? static_cast<std::size_t>(threads) : 1;
    std::vector<std::vector<Candidate>> parts(shards);
    if (shards == 1) {
      expand_range(cur, letters, 0, n, opt.element_bits, parts[0]);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < shards; ++t) {
        const std::size_t lo = n * t / shards;
        const std::size_t hi = n * (t + 1) / shards;
        pool.emplace_back(expand_range, std::cref(cur), std::cref(letters), lo, hi, opt.element_bits,
                          std::ref(parts[t]));
      }
      for (auto& th : pool) th.join();
    }

    Sphere next;
    bool aborted = false;
    for (auto& part : parts) {
      for (Candidate& c : part) {
        if (prev.contains(c.g, c.hash) || cur.contains(c.g, c.hash) || next.contains(c.g, c.hash)) continue;
        if (c.oversized) {
          census.stop_reason = "element bit budget exceeded at radius " + std::to_string(r + 1);
          aborted = true;
          break;
        }
        Word w;
        if (track) {
          w = cur.words[c.parent];
          w.push_back(s.closure()[c.letter]);
        }
        next.add(std::move(c.g), c.hash, std::move(w), track);
        const std::size_t bytes = prev.bytes + cur.bytes + next.bytes;
        census.peak_bytes = std::max(census.peak_bytes, bytes);
        if (bytes > opt.memory_budget) {
          census.stop_reason = "memory budget exceeded at radius " + std::to_string(r + 1);
          aborted = true;
          break;
        }
        if (visit) {
          const std::size_t idx = next.elems.size() - 1;
          if (!visit(BallElement{next.elems[idx], track ? next.words[idx] : kEmpty, r + 1})) {
            census.stop_reason = "stopped by visitor";
            aborted = true;
            break;
          }
        }
      }
      if (aborted) break;
      part.clear();
      part.shrink_to_fit();
    }
    if (aborted) return census;
    census.counts.push_back(census.counts.back() + next.elems.size());
    prev = std::move(cur);
    cur = std::move(next);
  }
  census.complete = true;
  return census;
}

GrowthEstimate growth_estimate(const BallCensus& c, bool allow_partial) {
  if (!c.complete && !allow_partial) throw PreconditionError("growth estimate needs a complete census");
  if (c.radius() < 1 && !allow_partial) throw PreconditionError("growth estimate needs radius >= 1");
  GrowthEstimate e;
  bool up = true, down = true;
  for (int r = 1; r <= c.radius(); ++r) {
    const double w = std::pow(static_cast<double>(c.counts[r]), 1.0 / r);
    if (!e.omega.empty()) {
      up = up && w >= e.omega.back();
      down = down && w <= e.omega.back();
    }
    e.radii.push_back(r);
    e.omega.push_back(w);
    e.entropy.push_back(std::log(w));
  }
  e.monotone = up || down;
  return e;
}

double free_pair_growth_bound(const FreePairCertificate&, long long len_g, long long len_h) {
  if (std::min(len_g, len_h) < 1) throw InvalidInput("word lengths must be positive");
  return std::pow(2.0, 1.0 / static_cast<double>(std::max(len_g, len_h)));
}

std::vector<std::string> census_law_violations(const BallCensus& c, std::size_t closure_size) {
  std::vector<std::string> out;
  const auto& n = c.counts;
  if (n.empty() || n[0] != 1) out.push_back("counts[0] != 1");
  for (std::size_t r = 1; r < n.size(); ++r) {
    if (n[r] < n[r - 1]) out.push_back("counts decrease at radius " + std::to_string(r));
    if (n[r] > (closure_size + 1) * n[r - 1]) out.push_back("valence bound fails at radius " + std::to_string(r));
    for (std::size_t a = 1; a < r; ++a) {
      // n[r] > n[a] * n[r-a], without overflow
      if (n[r - a] != 0 && n[r] / n[r - a] >= n[a] && n[r] > n[a] * n[r - a]) {
        out.push_back("submultiplicativity fails at " + std::to_string(a) + "+" + std::to_string(r - a));
      }
    }
  }
  return out;
}

nlohmann::json census_to_json(const BallCensus& c) {
  nlohmann::json radii = nlohmann::json::array();
  nlohmann::json omega = nlohmann::json::array();
  nlohmann::json entropy = nlohmann::json::array();
  const GrowthEstimate e = growth_estimate(c, true);
  for (int r = 0; r <= c.radius(); ++r) {
    radii.push_back(r);
    if (r == 0) {
      omega.push_back(nullptr);
      entropy.push_back(nullptr);
    } else {
      omega.push_back(e.omega[r - 1]);
      entropy.push_back(e.entropy[r - 1]);
    }
  }
  nlohmann::json j{{"radii", radii},
                   {"counts", c.counts},
                   {"omega_k", omega},
                   {"entropy_k", entropy},
                   {"omega_monotone", e.monotone},
                   {"complete", c.complete},
                   {"requested_radius", c.requested_radius},
                   {"generating_set_hash", hex64(c.generating_set_hash)}};
  if (!c.complete) j["stop_reason"] = c.stop_reason;
  return j;
}

std::string census_to_csv(const BallCensus& c) {
  std::ostringstream os;
  os << "radius,count,omega,entropy\n";
  const GrowthEstimate e = growth_estimate(c, true);
  os.precision(17);
  for (int r = 0; r <= c.radius(); ++r) {
    os << r << ',' << c.counts[r] << ',';
    if (r > 0) os << e.omega[r - 1] << ',' << e.entropy[r - 1];
    else os << ',';
    os << '\n';
  }
  return os.str();
}

}  // namespace ufg
