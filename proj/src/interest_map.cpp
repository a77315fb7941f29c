#include "sgim/interest_map.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace sgim {

double competence(const LocalModel& model, const Outcome& goal) {
  if (model.cold(goal.kind)) return -1.0;
  return -model.best_recorded(goal).second;
}

double progress(double gamma1, double gamma2, int nb_actions, double alpha_p) {
  if (nb_actions < 1) throw std::domain_error("progress: nb_actions must be >= 1");
  return std::tanh(alpha_p * (gamma2 - gamma1) / static_cast<double>(nb_actions));
}

double windowed_interest(std::span<const LedgerEntry> ledger, int window, double kappa) {
  if (ledger.empty()) return 0.0;
  const std::size_t n = std::min(ledger.size(), static_cast<std::size_t>(window));
  double sum = 0.0;
  for (std::size_t i = ledger.size() - n; i < ledger.size(); ++i) sum += ledger[i].progress;
  return sum / static_cast<double>(n) / kappa;
}

std::optional<SplitCandidate> draw_split_candidate(const OutcomeBox& box, Rng& rng) {
  std::size_t usable[2];
  std::size_t n_usable = 0;
  for (std::size_t d = 0; d < box.dims(); ++d) {
    // a threshold strictly inside needs at least one double between lo and hi
    if (std::nextafter(box.lo[d], box.hi[d]) < box.hi[d]) usable[n_usable++] = d;
  }
  if (n_usable == 0) return std::nullopt;
  const std::size_t dim = usable[uniform_index(rng, n_usable)];
  double v = uniform(rng, box.lo[dim], box.hi[dim]);
  if (!(v > box.lo[dim] && v < box.hi[dim])) v = box.lo[dim] + 0.5 * box.width(dim);
  if (!(v > box.lo[dim] && v < box.hi[dim])) v = std::nextafter(box.lo[dim], box.hi[dim]);
  return SplitCandidate{dim, v};
}

InterestMap::InterestMap(const Config& cfg, std::vector<StrategyId> strategies)
    : cfg_(cfg), strategies_(std::move(strategies)) {
  if (strategies_.empty()) throw std::invalid_argument("InterestMap: no strategies");
  for (const auto& s : strategies_) kappa_.push_back(cfg_.kappa(s));
  for (const OutcomeBox& box : cfg_.space.boxes) {
    Node n;
    n.box = box;
    n.ledgers.resize(strategies_.size());
    n.interest.assign(strategies_.size(), 0.0);
    nodes_.push_back(std::move(n));
  }
}

std::vector<std::size_t> InterestMap::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].leaf()) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> InterestMap::leaves(OutcomeKind k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].leaf() && nodes_[i].box.kind == k) out.push_back(i);
  }
  return out;
}

std::size_t InterestMap::locate(const Outcome& o) const {
  std::size_t i = root(o.kind);
  const Outcome p = nodes_[i].box.clamp(o);
  while (!nodes_[i].leaf()) {
    const Node& n = nodes_[i];
    i = static_cast<std::size_t>(p.v[n.split_dim] < n.threshold ? n.children[0] : n.children[1]);
  }
  return i;
}

void InterestMap::refresh_interest(Node& n) const {
  for (std::size_t s = 0; s < strategies_.size(); ++s) {
    n.interest[s] = windowed_interest(n.ledgers[s], cfg_.delta, kappa_[s]);
  }
}

void InterestMap::add(const Outcome& point, std::size_t strategy, double prog, double comp, bool is_goal,
                      Rng& rng) {
  const OutcomeBox& root_box = nodes_[root(point.kind)].box;
  Outcome p = point;
  if (!root_box.contains(point)) {
    p = root_box.clamp(point);
    ++clamped_;
  }
  const std::size_t leaf = locate(p);
  Node& n = nodes_[leaf];
  n.ledgers[strategy].push_back({p, prog, comp, is_goal});
  n.interest[strategy] = windowed_interest(n.ledgers[strategy], cfg_.delta, kappa_[strategy]);
  if (n.ledgers[strategy].size() > static_cast<std::size_t>(cfg_.g_max)) split(leaf, strategy, rng);
}

void InterestMap::update(const Outcome& goal, double goal_competence, std::span<const Episode> episodes,
                         double prog, std::size_t strategy, Rng& rng) {
  for (const Episode& e : episodes) {
    add(e.observed.thrown, strategy, prog, 0.0, false, rng);
    if (e.observed.placed) add(*e.observed.placed, strategy, prog, 0.0, false, rng);
  }
  add(goal, strategy, prog, goal_competence, true, rng);
}

void InterestMap::split(std::size_t index, std::size_t strategy, Rng& rng) {
  const Rng rng_before = rng;
  const OutcomeBox box = nodes_[index].box;
  const std::vector<LedgerEntry>& ledger = nodes_[index].ledgers[strategy];
  const double kappa = kappa_[strategy];

  std::vector<SplitCandidate> candidates;
  for (int c = 0; c < cfg_.m_splits; ++c) {
    auto cand = draw_split_candidate(box, rng);
    if (!cand) break;
    candidates.push_back(*cand);
  }
  if (candidates.empty()) {
    // zero-width box: keep the newest g_max entries instead
    auto& l = nodes_[index].ledgers[strategy];
    l.erase(l.begin(), l.end() - cfg_.g_max);
    refresh_interest(nodes_[index]);
    ++refused_splits_;
    return;
  }

  double best_quality = -1.0;
  SplitCandidate best{};
  std::vector<LedgerEntry> low, high;
  for (const SplitCandidate& cand : candidates) {
    low.clear();
    high.clear();
    for (const LedgerEntry& e : ledger) (e.point.v[cand.dim] < cand.threshold ? low : high).push_back(e);
    const double diff = windowed_interest(low, cfg_.delta, kappa) - windowed_interest(high, cfg_.delta, kappa);
    const double quality = static_cast<double>(low.size()) * static_cast<double>(high.size()) * std::abs(diff);
    if (quality > best_quality) {
      best_quality = quality;
      best = cand;
    }
  }

  if (record_splits_) {
    split_records_.push_back({box, strategy, ledger, candidates, rng_before, best, best_quality});
  }

  Node lo_child, hi_child;
  lo_child.box = box;
  hi_child.box = box;
  lo_child.box.hi[best.dim] = best.threshold;
  hi_child.box.lo[best.dim] = best.threshold;
  lo_child.parent = hi_child.parent = static_cast<int>(index);
  lo_child.ledgers.resize(strategies_.size());
  hi_child.ledgers.resize(strategies_.size());
  lo_child.interest.assign(strategies_.size(), 0.0);
  hi_child.interest.assign(strategies_.size(), 0.0);

  Node& parent = nodes_[index];
  for (std::size_t s = 0; s < strategies_.size(); ++s) {
    for (LedgerEntry& e : parent.ledgers[s]) {
      (e.point.v[best.dim] < best.threshold ? lo_child : hi_child).ledgers[s].push_back(std::move(e));
    }
    parent.ledgers[s].clear();
    parent.ledgers[s].shrink_to_fit();
    parent.interest[s] = 0.0;
  }
  for (Node* child : {&lo_child, &hi_child}) {
    for (auto& l : child->ledgers) {
      // a split that cannot separate the entries keeps only the newest g_max
      if (l.size() > static_cast<std::size_t>(cfg_.g_max)) l.erase(l.begin(), l.end() - cfg_.g_max);
    }
    refresh_interest(*child);
  }
  parent.split_dim = best.dim;
  parent.threshold = best.threshold;
  const int lo_id = static_cast<int>(nodes_.size());
  parent.children[0] = lo_id;
  parent.children[1] = lo_id + 1;
  nodes_.push_back(std::move(lo_child));
  nodes_.push_back(std::move(hi_child));
}

std::vector<double> InterestMap::pair_probabilities() const {
  const auto lv = leaves();
  const std::size_t S = strategies_.size();
  std::vector<double> p(lv.size() * S);
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lv.size(); ++i) {
    for (std::size_t s = 0; s < S; ++s) {
      p[i * S + s] = nodes_[lv[i]].interest[s];
      lowest = std::min(lowest, p[i * S + s]);
    }
  }
  double total = 0.0;
  for (double& v : p) {
    v -= lowest;
    total += v;
  }
  if (!(total > 0.0)) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(p.size()));
    return p;
  }
  for (double& v : p) v /= total;
  return p;
}

Outcome InterestMap::uniform_in(const OutcomeBox& box, Rng& rng) const {
  Outcome o;
  o.kind = box.kind;
  for (std::size_t d = 0; d < box.dims(); ++d) o.v[d] = uniform(rng, box.lo[d], box.hi[d]);
  return o;
}

InterestMap::Selection InterestMap::select(Rng& rng) const {
  const double u = uniform01(rng);
  Selection sel;
  if (u < cfg_.p1) {
    sel.mode = 1;
    sel.strategy = uniform_index(rng, strategies_.size());
    std::size_t n_throw = 1, n_place = 1;
    if (cfg_.mode1_subspace == Mode1Subspace::LeafCount) {
      n_throw = leaves(OutcomeKind::Throw).size();
      n_place = leaves(OutcomeKind::Place).size();
    }
    const auto pick = uniform_index(rng, n_throw + n_place);
    const OutcomeKind kind = pick < n_throw ? OutcomeKind::Throw : OutcomeKind::Place;
    sel.goal = uniform_in(nodes_[root(kind)].box, rng);
    sel.leaf = locate(sel.goal);
    return sel;
  }

  sel.mode = u < cfg_.p1 + cfg_.p2 ? 2 : 3;
  const auto lv = leaves();
  const auto probs = pair_probabilities();
  const double r = uniform01(rng);
  double acc = 0.0;
  std::size_t chosen = probs.size() - 1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (r < acc && probs[i] > 0.0) {
      chosen = i;
      break;
    }
  }
  while (probs[chosen] <= 0.0 && chosen > 0) --chosen;  // rounding fell off the end
  sel.leaf = lv[chosen / strategies_.size()];
  sel.strategy = chosen % strategies_.size();
  const Node& leaf = nodes_[sel.leaf];

  if (sel.mode == 3) {
    const LedgerEntry* worst = nullptr;
    for (const auto& l : leaf.ledgers) {
      for (const LedgerEntry& e : l) {
        if (e.is_goal && (!worst || e.competence < worst->competence)) worst = &e;
      }
    }
    if (worst) {
      Outcome g = worst->point;
      for (std::size_t d = 0; d < leaf.box.dims(); ++d) {
        const double r_noise = cfg_.mode3_noise * leaf.box.width(d);
        g.v[d] = std::clamp(g.v[d] + uniform(rng, -r_noise, r_noise), leaf.box.lo[d], leaf.box.hi[d]);
      }
      sel.goal = g;
      return sel;
    }
  }
  sel.goal = uniform_in(leaf.box, rng);
  return sel;
}

nlohmann::json InterestMap::to_json() const {
  using nlohmann::json;
  std::function<json(std::size_t)> dump = [&](std::size_t i) {
    const Node& n = nodes_[i];
    json j;
    j["id"] = i;
    j["kind"] = kind_name(n.box.kind);
    j["lo"] = std::vector<double>(n.box.lo.begin(), n.box.lo.begin() + n.box.dims());
    j["hi"] = std::vector<double>(n.box.hi.begin(), n.box.hi.begin() + n.box.dims());
    if (n.leaf()) {
      json ledgers = json::object(), interest = json::object();
      for (std::size_t s = 0; s < strategies_.size(); ++s) {
        ledgers[to_string(strategies_[s])] = n.ledgers[s].size();
        interest[to_string(strategies_[s])] = n.interest[s];
      }
      j["ledger_lengths"] = ledgers;
      j["interest"] = interest;
    } else {
      j["split_dim"] = n.split_dim;
      j["threshold"] = n.threshold;
      j["children"] = {dump(static_cast<std::size_t>(n.children[0])), dump(static_cast<std::size_t>(n.children[1]))};
    }
    return j;
  };
  json roots = json::array();
  for (std::size_t k = 0; k < kSubspaces; ++k) roots.push_back(dump(k));
  return roots;
}

}  // namespace sgim
