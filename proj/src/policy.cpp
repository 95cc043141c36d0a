#include "tacticforge/policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "tacticforge/sexpr.hpp"

namespace tforge {

namespace {

double softplus(double x) { return x > 30 ? x : std::log1p(std::exp(x)); }
double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

size_t bucket_of(const std::string& token, int buckets) {
  return size_t(fnv1a64(token) % uint64_t(buckets));
}

}  // namespace

std::vector<std::string> policy_tokens(const TermPtr& concl) {
  return tokenize(encode_term(alpha_canonical(normalize(concl))));
}

Policy::Layout Policy::layout() const {
  const size_t d = config_.dim;
  const size_t H = config_.hash_buckets;
  const size_t T = config_.num_tactics;
  const size_t hidden = config_.combiner_hidden;
  const size_t in = (config_.tactic_dependent ? 3 : 2) * d;
  Layout l{};
  size_t at = 0;
  l.embed = at; at += H * d;
  l.goal_w = at; at += d * d;
  l.goal_b = at; at += d;
  l.prem_w = at; at += d * d;
  l.prem_b = at; at += d;
  l.tactic_table = at; at += T * d;
  l.s_w = at; at += T * d;
  l.s_b = at; at += T;
  l.c_w1 = at; at += hidden * in;
  l.c_b1 = at; at += hidden;
  l.c_w2 = at; at += hidden;
  l.c_b2 = at; at += 1;
  l.sentinel = at; at += d;
  l.total = at;
  return l;
}

std::vector<Policy::GroupSpan> Policy::parameter_groups() const {
  Layout l = layout();
  return {
      {"embed", l.embed, l.goal_w - l.embed},
      {"goal_w", l.goal_w, l.goal_b - l.goal_w},
      {"goal_b", l.goal_b, l.prem_w - l.goal_b},
      {"prem_w", l.prem_w, l.prem_b - l.prem_w},
      {"prem_b", l.prem_b, l.tactic_table - l.prem_b},
      {"tactic_table", l.tactic_table, l.s_w - l.tactic_table},
      {"s_w", l.s_w, l.s_b - l.s_w},
      {"s_b", l.s_b, l.c_w1 - l.s_b},
      {"c_w1", l.c_w1, l.c_b1 - l.c_w1},
      {"c_b1", l.c_b1, l.c_w2 - l.c_b1},
      {"c_w2", l.c_w2, l.c_b2 - l.c_w2},
      {"c_b2", l.c_b2, l.sentinel - l.c_b2},
      {"sentinel", l.sentinel, l.total - l.sentinel},
  };
}

Policy::Policy(PolicyConfig config, uint64_t init_seed) : config_(config) {
  if (config_.num_tactics == 0) config_.num_tactics = int(all_tactics().size());
  Layout l = layout();
  params_.assign(l.total, 0.0);
  Rng rng(init_seed);
  auto init_span = [&](size_t off, size_t n, double scale) {
    for (size_t i = 0; i < n; ++i) params_[off + i] = (rng.real() * 2 - 1) * scale;
  };
  init_span(l.embed, l.goal_w - l.embed, 0.05);
  init_span(l.goal_w, l.goal_b - l.goal_w, 0.05);
  init_span(l.prem_w, l.prem_b - l.prem_w, 0.05);
  init_span(l.tactic_table, l.s_w - l.tactic_table, 0.05);
  init_span(l.s_w, l.s_b - l.s_w, 0.05);
  init_span(l.c_w1, l.c_b1 - l.c_w1, 0.05);
  init_span(l.c_w2, l.c_b2 - l.c_w2, 0.05);
  init_span(l.sentinel, l.total - l.sentinel, 0.05);
  avg_ = params_;
}

std::vector<double> Policy::encode_tokens(const std::vector<std::string>& tokens,
                                          size_t tower_w, size_t tower_b,
                                          const std::vector<double>& p) const {
  const size_t d = config_.dim;
  Layout l = layout();
  std::vector<double> bag(d, 0.0);
  double scale = 1.0 / std::sqrt(double(std::max<size_t>(1, tokens.size())));
  for (const auto& tok : tokens) {
    size_t b = bucket_of(tok, config_.hash_buckets);
    for (size_t i = 0; i < d; ++i) bag[i] += p[l.embed + b * d + i];
  }
  for (auto& v : bag) v *= scale;
  std::vector<double> out(d, 0.0);
  for (size_t i = 0; i < d; ++i) {
    double acc = p[tower_b + i];
    for (size_t j = 0; j < d; ++j) acc += p[tower_w + i * d + j] * bag[j];
    out[i] = acc > 0 ? acc : 0.0;
  }
  return out;
}

std::vector<double> Policy::encode_goal(const Goal& goal, bool averaged) const {
  Layout l = layout();
  return encode_tokens(policy_tokens(goal.concl), l.goal_w, l.goal_b,
                       averaged ? avg_ : params_);
}

std::vector<double> Policy::encode_premise_term(const TermPtr& concl, bool averaged) const {
  Layout l = layout();
  return encode_tokens(policy_tokens(concl), l.prem_w, l.prem_b, averaged ? avg_ : params_);
}

std::vector<double> Policy::encode_premise(const Theorem& th, bool averaged) const {
  return encode_premise_term(th.concl(), averaged);
}

std::vector<double> Policy::rank_tactics(const Goal& goal, bool averaged) const {
  const std::vector<double>& p = averaged ? avg_ : params_;
  Layout l = layout();
  std::vector<double> g = encode_goal(goal, averaged);
  const size_t d = config_.dim;
  std::vector<double> logits(config_.num_tactics, 0.0);
  for (int t = 0; t < config_.num_tactics; ++t) {
    double acc = p[l.s_b + t];
    for (size_t i = 0; i < d; ++i) acc += p[l.s_w + size_t(t) * d + i] * g[i];
    logits[t] = acc;
  }
  return logits;
}

double Policy::combiner_score(const std::vector<double>& g, const std::vector<double>& prem,
                              int tactic_index, const std::vector<double>& p) const {
  Layout l = layout();
  const size_t d = config_.dim;
  const size_t hidden = config_.combiner_hidden;
  const size_t in = (config_.tactic_dependent ? 3 : 2) * d;
  std::vector<double> z(in);
  for (size_t i = 0; i < d; ++i) z[i] = g[i];
  for (size_t i = 0; i < d; ++i) z[d + i] = prem[i];
  if (config_.tactic_dependent)
    for (size_t i = 0; i < d; ++i)
      z[2 * d + i] = p[l.tactic_table + size_t(tactic_index) * d + i];
  double score = p[l.c_b2];
  for (size_t i = 0; i < hidden; ++i) {
    double acc = p[l.c_b1 + i];
    for (size_t j = 0; j < in; ++j) acc += p[l.c_w1 + i * in + j] * z[j];
    if (acc > 0) score += p[l.c_w2 + i] * acc;
  }
  return score;
}

Policy::ArgScores Policy::rank_arguments(const std::vector<double>& goal_embedding,
                                         TacticId tactic,
                                         const std::vector<const std::vector<double>*>& candidates,
                                         bool averaged) const {
  const std::vector<double>& p = averaged ? avg_ : params_;
  Layout l = layout();
  int t = 0;
  for (size_t i = 0; i < all_tactics().size(); ++i)
    if (all_tactics()[i] == tactic) t = int(i);
  ArgScores out;
  out.scores.reserve(candidates.size());
  for (const auto* c : candidates)
    out.scores.push_back(combiner_score(goal_embedding, *c, t, p));
  std::vector<double> sent(p.begin() + l.sentinel, p.begin() + l.sentinel + config_.dim);
  out.sentinel = combiner_score(goal_embedding, sent, t, p);
  return out;
}

// --- training ---------------------------------------------------------------------

namespace {

struct TokenBag {
  std::vector<size_t> buckets;
  double scale = 1.0;
};

TokenBag bag_of(const TermPtr& concl, int hash_buckets) {
  TokenBag bag;
  auto tokens = policy_tokens(concl);
  bag.scale = 1.0 / std::sqrt(double(std::max<size_t>(1, tokens.size())));
  bag.buckets.reserve(tokens.size());
  for (const auto& t : tokens) bag.buckets.push_back(bucket_of(t, hash_buckets));
  return bag;
}

}  // namespace

struct PolicyBackprop {
  const Policy& policy;
  const std::vector<double>& p;
  Policy::Layout l;
  size_t d, hidden, in;
  int T;

  explicit PolicyBackprop(const Policy& pol)
      : policy(pol),
        p(pol.params_),
        l(pol.layout()),
        d(pol.config_.dim),
        hidden(pol.config_.combiner_hidden),
        in((pol.config_.tactic_dependent ? 3 : 2) * pol.config_.dim),
        T(pol.config_.num_tactics) {}

  struct Encoded {
    TokenBag bag;
    std::vector<double> x;    // scaled bag vector
    std::vector<double> pre;  // affine output before relu
    std::vector<double> out;
  };

  Encoded encode(const TermPtr& concl, size_t w_off, size_t b_off) const {
    Encoded e;
    e.bag = bag_of(concl, policy.config_.hash_buckets);
    e.x.assign(d, 0.0);
    for (size_t b : e.bag.buckets)
      for (size_t i = 0; i < d; ++i) e.x[i] += p[l.embed + b * d + i];
    for (auto& v : e.x) v *= e.bag.scale;
    e.pre.assign(d, 0.0);
    e.out.assign(d, 0.0);
    for (size_t i = 0; i < d; ++i) {
      double acc = p[b_off + i];
      for (size_t j = 0; j < d; ++j) acc += p[w_off + i * d + j] * e.x[j];
      e.pre[i] = acc;
      e.out[i] = acc > 0 ? acc : 0.0;
    }
    return e;
  }

  // Backprop through a tower encoding: d_out arrives, gradients accumulate.
  void encode_backward(const Encoded& e, size_t w_off, size_t b_off,
                       const std::vector<double>& d_out, std::vector<double>& grad) const {
    std::vector<double> d_pre(d);
    for (size_t i = 0; i < d; ++i) d_pre[i] = e.pre[i] > 0 ? d_out[i] : 0.0;
    std::vector<double> d_x(d, 0.0);
    for (size_t i = 0; i < d; ++i) {
      grad[b_off + i] += d_pre[i];
      for (size_t j = 0; j < d; ++j) {
        grad[w_off + i * d + j] += d_pre[i] * e.x[j];
        d_x[j] += d_pre[i] * p[w_off + i * d + j];
      }
    }
    for (size_t b : e.bag.buckets)
      for (size_t i = 0; i < d; ++i) grad[l.embed + b * d + i] += d_x[i] * e.bag.scale;
  }

  struct CombinerFwd {
    std::vector<double> z;
    std::vector<double> h_pre;
    std::vector<double> mask;  // inverted-dropout scales; empty when off
    double score = 0.0;
  };

  mutable Rng* dropout_rng = nullptr;

  CombinerFwd combiner(const std::vector<double>& g, const double* prem, int tac) const {
    CombinerFwd f;
    f.z.assign(in, 0.0);
    for (size_t i = 0; i < d; ++i) f.z[i] = g[i];
    for (size_t i = 0; i < d; ++i) f.z[d + i] = prem[i];
    if (policy.config_.tactic_dependent)
      for (size_t i = 0; i < d; ++i) f.z[2 * d + i] = p[l.tactic_table + size_t(tac) * d + i];
    if (dropout_rng && policy.config_.dropout > 0.0) {
      double rate = policy.config_.dropout;
      f.mask.assign(in, 0.0);
      for (size_t j = 0; j < in; ++j) {
        if (dropout_rng->real() < rate) {
          f.z[j] = 0.0;
        } else {
          f.mask[j] = 1.0 / (1.0 - rate);
          f.z[j] *= f.mask[j];
        }
      }
    }
    f.h_pre.assign(hidden, 0.0);
    f.score = p[l.c_b2];
    for (size_t i = 0; i < hidden; ++i) {
      double acc = p[l.c_b1 + i];
      for (size_t j = 0; j < in; ++j) acc += p[l.c_w1 + i * in + j] * f.z[j];
      f.h_pre[i] = acc;
      if (acc > 0) f.score += p[l.c_w2 + i] * acc;
    }
    return f;
  }

  // d_score arrives; returns gradient wrt z (goal part, premise part, tactic
  // part routed by the caller).
  std::vector<double> combiner_backward(const CombinerFwd& f, double d_score,
                                        std::vector<double>& grad) const {
    grad[l.c_b2] += d_score;
    std::vector<double> d_z(in, 0.0);
    for (size_t i = 0; i < hidden; ++i) {
      double h = f.h_pre[i] > 0 ? f.h_pre[i] : 0.0;
      grad[l.c_w2 + i] += d_score * h;
      if (f.h_pre[i] <= 0) continue;
      double d_h = d_score * p[l.c_w2 + i];
      grad[l.c_b1 + i] += d_h;
      for (size_t j = 0; j < in; ++j) {
        grad[l.c_w1 + i * in + j] += d_h * f.z[j];
        d_z[j] += d_h * p[l.c_w1 + i * in + j];
      }
    }
    if (!f.mask.empty())
      for (size_t j = 0; j < in; ++j) d_z[j] *= f.mask[j];
    return d_z;
  }

  double run(const std::vector<TrainBatchItem>& batch, std::vector<double>* grad_out) const {
    std::vector<double> grad;
    if (grad_out) grad.assign(l.total, 0.0);
    double total_loss = 0.0;
    const double bscale = 1.0 / double(std::max<size_t>(1, batch.size()));

    for (const auto& item : batch) {
      Encoded g = encode(item.goal.concl, l.goal_w, l.goal_b);
      std::vector<double> d_g(d, 0.0);

      // Tactic cross entropy.
      int target = 0;
      for (size_t i = 0; i < all_tactics().size(); ++i)
        if (all_tactics()[i] == item.tactic) target = int(i);
      std::vector<double> logits(T, 0.0);
      double maxl = -1e300;
      for (int t = 0; t < T; ++t) {
        double acc = p[l.s_b + t];
        for (size_t i = 0; i < d; ++i) acc += p[l.s_w + size_t(t) * d + i] * g.out[i];
        logits[t] = acc;
        maxl = std::max(maxl, acc);
      }
      double z = 0.0;
      for (int t = 0; t < T; ++t) z += std::exp(logits[t] - maxl);
      total_loss += bscale * (std::log(z) - (logits[target] - maxl));
      if (grad_out) {
        for (int t = 0; t < T; ++t) {
          double soft = std::exp(logits[t] - maxl) / z;
          double d_logit = bscale * (soft - (t == target ? 1.0 : 0.0));
          grad[l.s_b + t] += d_logit;
          for (size_t i = 0; i < d; ++i) {
            grad[l.s_w + size_t(t) * d + i] += d_logit * g.out[i];
            d_g[i] += d_logit * p[l.s_w + size_t(t) * d + i];
          }
        }
      }

      // Argument ranking: pairwise logistic over positives and negatives.
      struct Cand {
        Encoded enc;       // premises that went through the tower
        bool is_sentinel = false;
        CombinerFwd fwd;
        double d_score = 0.0;
      };
      std::vector<Cand> pos, neg;
      auto mk_cand = [&](const TermPtr& t) {
        Cand c;
        c.enc = encode(t, l.prem_w, l.prem_b);
        c.fwd = combiner(g.out, c.enc.out.data(), target);
        return c;
      };
      auto mk_sentinel = [&] {
        Cand c;
        c.is_sentinel = true;
        c.fwd = combiner(g.out, &p[l.sentinel], target);
        return c;
      };
      if (item.empty_arglist) {
        pos.push_back(mk_sentinel());
        for (const auto& t : item.neg_args) neg.push_back(mk_cand(t));
      } else {
        for (const auto& t : item.pos_args) pos.push_back(mk_cand(t));
        for (const auto& t : item.neg_args) neg.push_back(mk_cand(t));
        if (!pos.empty()) neg.push_back(mk_sentinel());
      }
      if (!pos.empty() && !neg.empty()) {
        double pscale = bscale / double(pos.size() * neg.size());
        for (auto& pc : pos)
          for (auto& nc : neg) {
            double margin = nc.fwd.score - pc.fwd.score;
            total_loss += pscale * softplus(margin);
            if (grad_out) {
              double s = sigmoid(margin) * pscale;
              nc.d_score += s;
              pc.d_score -= s;
            }
          }
        if (grad_out) {
          for (auto* side : {&pos, &neg})
            for (auto& c : *side) {
              if (c.d_score == 0.0) continue;
              std::vector<double> d_z = combiner_backward(c.fwd, c.d_score, grad);
              for (size_t i = 0; i < d; ++i) d_g[i] += d_z[i];
              if (c.is_sentinel) {
                for (size_t i = 0; i < d; ++i) grad[l.sentinel + i] += d_z[d + i];
              } else {
                std::vector<double> d_p(d_z.begin() + d, d_z.begin() + 2 * d);
                encode_backward(c.enc, l.prem_w, l.prem_b, d_p, grad);
              }
              if (policy.config_.tactic_dependent)
                for (size_t i = 0; i < d; ++i)
                  grad[l.tactic_table + size_t(target) * d + i] += d_z[2 * d + i];
            }
        }
      }

      if (grad_out) encode_backward(g, l.goal_w, l.goal_b, d_g, grad);
    }

    if (grad_out) *grad_out = std::move(grad);
    return total_loss;
  }
};

double Policy::compute_loss(const std::vector<TrainBatchItem>& batch) const {
  return PolicyBackprop(*this).run(batch, nullptr);
}

std::vector<double> Policy::compute_gradient(const std::vector<TrainBatchItem>& batch) const {
  std::vector<double> grad;
  PolicyBackprop(*this).run(batch, &grad);
  return grad;
}

double Policy::train_step(const std::vector<TrainBatchItem>& batch, double learning_rate) {
  std::vector<double> grad;
  PolicyBackprop bp(*this);
  Rng drop_rng(step_ ^ 0x5e3db5c1u);
  if (config_.dropout > 0.0) bp.dropout_rng = &drop_rng;
  double loss = bp.run(batch, &grad);
  if (!std::isfinite(loss)) fail(Err::NonFiniteLoss, "batch aborted at step " + std::to_string(step_));
  if (config_.adam) {
    if (adam_m_.empty()) {
      adam_m_.assign(params_.size(), 0.0);
      adam_v_.assign(params_.size(), 0.0);
    }
    const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    double t = double(step_ + 1);
    double corr1 = 1.0 - std::pow(b1, t);
    double corr2 = 1.0 - std::pow(b2, t);
    for (size_t i = 0; i < params_.size(); ++i) {
      adam_m_[i] = b1 * adam_m_[i] + (1 - b1) * grad[i];
      adam_v_[i] = b2 * adam_v_[i] + (1 - b2) * grad[i] * grad[i];
      params_[i] -= learning_rate * (adam_m_[i] / corr1) / (std::sqrt(adam_v_[i] / corr2) + eps);
    }
  } else {
    for (size_t i = 0; i < params_.size(); ++i) params_[i] -= learning_rate * grad[i];
  }
  ++step_;
  const double rate = 0.9999;
  for (size_t i = 0; i < params_.size(); ++i)
    avg_[i] = rate * avg_[i] + (1 - rate) * params_[i];
  return loss;
}

// --- serialization -----------------------------------------------------------------

namespace {

void put_u32(std::string& s, uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(char((v >> (8 * i)) & 0xff));
}
void put_u64(std::string& s, uint64_t v) {
  for (int i = 0; i < 8; ++i) s.push_back(char((v >> (8 * i)) & 0xff));
}
void put_f32(std::string& s, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32(s, bits);
}
uint32_t get_u32(const std::string& s, size_t& at) {
  if (at + 4 > s.size()) fail(Err::CorruptSnapshot, "truncated checkpoint");
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= uint32_t(uint8_t(s[at + i])) << (8 * i);
  at += 4;
  return v;
}
uint64_t get_u64(const std::string& s, size_t& at) {
  if (at + 8 > s.size()) fail(Err::CorruptSnapshot, "truncated checkpoint");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t(uint8_t(s[at + i])) << (8 * i);
  at += 8;
  return v;
}
float get_f32(const std::string& s, size_t& at) {
  uint32_t bits = get_u32(s, at);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::NotFound, "cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return data;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Err::NotFound, "cannot write " + path);
  out.write(data.data(), std::streamsize(data.size()));
}

constexpr uint32_t kCheckpointMagic = 0x4b435046u;  // "FPCK"
constexpr uint32_t kCacheMagic = 0x43455046u;       // "FPEC"

}  // namespace

void Policy::save(const std::string& path) const {
  std::string s;
  put_u32(s, kCheckpointMagic);
  put_u32(s, 1);  // version
  put_u32(s, uint32_t(config_.dim));
  put_u32(s, uint32_t(config_.hash_buckets));
  put_u32(s, uint32_t(config_.combiner_hidden));
  put_u32(s, uint32_t(config_.num_tactics));
  put_u32(s, config_.tactic_dependent ? 1 : 0);
  put_u64(s, step_);
  put_u64(s, params_.size());
  for (double v : params_) put_f32(s, float(v));
  for (double v : avg_) put_f32(s, float(v));
  write_file(path, s);
}

Policy Policy::load(const std::string& path) {
  std::string s = read_file(path);
  size_t at = 0;
  if (get_u32(s, at) != kCheckpointMagic) fail(Err::CorruptSnapshot, "bad checkpoint magic");
  uint32_t version = get_u32(s, at);
  if (version != 1) fail(Err::CorruptSnapshot, "unknown checkpoint version");
  PolicyConfig cfg;
  cfg.dim = int(get_u32(s, at));
  cfg.hash_buckets = int(get_u32(s, at));
  cfg.combiner_hidden = int(get_u32(s, at));
  cfg.num_tactics = int(get_u32(s, at));
  cfg.tactic_dependent = get_u32(s, at) != 0;
  Policy out(cfg);
  out.step_ = get_u64(s, at);
  uint64_t count = get_u64(s, at);
  if (count != out.params_.size()) fail(Err::CorruptSnapshot, "parameter count mismatch");
  for (auto& v : out.params_) v = double(get_f32(s, at));
  for (auto& v : out.avg_) v = double(get_f32(s, at));
  return out;
}

PremiseEmbeddingCache build_premise_cache(const Policy& policy,
                                          const std::vector<std::pair<uint64_t, Theorem>>& thms,
                                          bool averaged) {
  PremiseEmbeddingCache cache;
  cache.checkpoint_step = policy.step();
  for (const auto& [fp, th] : thms) cache.by_fp[fp] = policy.encode_premise(th, averaged);
  return cache;
}

void save_premise_cache(const PremiseEmbeddingCache& cache, const std::string& path) {
  std::string s;
  put_u32(s, kCacheMagic);
  put_u64(s, cache.checkpoint_step);
  put_u64(s, cache.by_fp.size());
  for (const auto& [fp, vec] : cache.by_fp) {
    put_u64(s, fp);
    put_u32(s, uint32_t(vec.size()));
    for (double v : vec) put_f32(s, float(v));
  }
  write_file(path, s);
}

PremiseEmbeddingCache load_premise_cache(const std::string& path) {
  std::string s = read_file(path);
  size_t at = 0;
  if (get_u32(s, at) != kCacheMagic) fail(Err::CorruptSnapshot, "bad cache magic");
  PremiseEmbeddingCache cache;
  cache.checkpoint_step = get_u64(s, at);
  uint64_t n = get_u64(s, at);
  for (uint64_t i = 0; i < n; ++i) {
    uint64_t fp = get_u64(s, at);
    uint32_t len = get_u32(s, at);
    std::vector<double> vec(len);
    for (auto& v : vec) v = double(get_f32(s, at));
    cache.by_fp[fp] = std::move(vec);
  }
  return cache;
}

// --- TF-IDF -----------------------------------------------------------------------

void TfIdfIndex::add(uint64_t fp, const TermPtr& statement) {
  auto tokens = policy_tokens(statement);
  auto& doc = docs_[fp];
  for (const auto& t : tokens) doc[t] += 1.0;
  std::map<std::string, bool> seen;
  for (const auto& t : tokens)
    if (!seen.count(t)) {
      seen[t] = true;
      df_[t] += 1;
    }
  ++n_docs_;
}

void TfIdfIndex::finalize() { finalized_ = true; }

double TfIdfIndex::score(const std::vector<std::string>& goal_tokens, uint64_t fp) const {
  auto it = docs_.find(fp);
  if (it == docs_.end()) return 0.0;
  std::map<std::string, double> gtf;
  for (const auto& t : goal_tokens) gtf[t] += 1.0;
  auto idf = [&](const std::string& t) {
    auto d = df_.find(t);
    size_t df = d == df_.end() ? 0 : d->second;
    return std::log((1.0 + double(n_docs_)) / (1.0 + double(df))) + 1.0;
  };
  double dot = 0.0, gn = 0.0, dn = 0.0;
  for (const auto& [t, tf] : gtf) {
    double w = tf * idf(t);
    gn += w * w;
    auto dt = it->second.find(t);
    if (dt != it->second.end()) dot += w * dt->second * idf(t);
  }
  for (const auto& [t, tf] : it->second) {
    double w = tf * idf(t);
    dn += w * w;
  }
  if (gn == 0 || dn == 0) return 0.0;
  return dot / (std::sqrt(gn) * std::sqrt(dn));
}

// --- action providers ----------------------------------------------------------------

namespace {

std::vector<size_t> order_desc(const std::vector<double>& scores) {
  std::vector<size_t> idx(scores.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  return idx;
}

}  // namespace

ActionProvider learned_action_provider(const Policy& policy,
                                       const PremiseEmbeddingCache& cache,
                                       std::vector<uint64_t> candidates, int num_tactic_args,
                                       bool averaged) {
  // The cache and policy outlive any single proof attempt; capture by pointer.
  const Policy* pol = &policy;
  const PremiseEmbeddingCache* pc = &cache;
  return [pol, pc, candidates = std::move(candidates), num_tactic_args,
          averaged](const Goal& goal) {
    std::vector<double> g = pol->encode_goal(goal, averaged);
    std::vector<double> logits = pol->rank_tactics(goal, averaged);
    std::vector<const std::vector<double>*> cand_vecs;
    std::vector<uint64_t> cand_fps;
    for (uint64_t fp : candidates) {
      auto it = pc->by_fp.find(fp);
      if (it == pc->by_fp.end()) continue;
      cand_vecs.push_back(&it->second);
      cand_fps.push_back(fp);
    }
    std::vector<Action> out;
    for (size_t ti : order_desc(logits)) {
      TacticId id = all_tactics()[ti];
      Action a{id, {}};
      if (tactic_arity(id) == ArityClass::ThmList && !cand_fps.empty()) {
        auto scores = pol->rank_arguments(g, id, cand_vecs, averaged);
        double best = *std::max_element(scores.scores.begin(), scores.scores.end());
        // The sentinel decides whether to emit any arguments at all.
        if (scores.sentinel <= best) {
          for (size_t ci : order_desc(scores.scores)) {
            if (int(a.args.size()) >= num_tactic_args) break;
            a.args.push_back(cand_fps[ci]);
          }
        }
      }
      out.push_back(std::move(a));
    }
    return out;
  };
}

ActionProvider baseline_action_provider(std::vector<double> tactic_prior,
                                        const TfIdfIndex& index,
                                        std::vector<uint64_t> candidates, int num_tactic_args) {
  const TfIdfIndex* idx = &index;
  return [prior = std::move(tactic_prior), idx, candidates = std::move(candidates),
          num_tactic_args](const Goal& goal) {
    auto gtokens = policy_tokens(goal.concl);
    std::vector<double> scores;
    scores.reserve(candidates.size());
    for (uint64_t fp : candidates) scores.push_back(idx->score(gtokens, fp));
    std::vector<uint64_t> ranked;
    for (size_t ci : order_desc(scores)) {
      if (int(ranked.size()) >= num_tactic_args) break;
      ranked.push_back(candidates[ci]);
    }
    std::vector<Action> out;
    for (size_t ti : order_desc(prior)) {
      TacticId id = all_tactics()[ti];
      Action a{id, {}};
      if (tactic_arity(id) == ArityClass::ThmList) a.args = ranked;
      out.push_back(std::move(a));
    }
    return out;
  };
}

ActionProvider meson_only_provider() {
  return [](const Goal&) {
    return std::vector<Action>{{TacticId::ASM_MESON_TAC, {}}};
  };
}

ActionProvider meson_tfidf_provider(const TfIdfIndex& index, std::vector<uint64_t> candidates,
                                    int num_tactic_args) {
  const TfIdfIndex* idx = &index;
  return [idx, candidates = std::move(candidates), num_tactic_args](const Goal& goal) {
    auto gtokens = policy_tokens(goal.concl);
    std::vector<double> scores;
    scores.reserve(candidates.size());
    for (uint64_t fp : candidates) scores.push_back(idx->score(gtokens, fp));
    Action a{TacticId::ASM_MESON_TAC, {}};
    for (size_t ci : order_desc(scores)) {
      if (int(a.args.size()) >= num_tactic_args) break;
      a.args.push_back(candidates[ci]);
    }
    return std::vector<Action>{std::move(a)};
  };
}

}  // namespace tforge
