#pragma once

// Action generator: a two-tower ranker (goal tower, premise tower, tactic
// table, combiner) over hashed token bags, plus a deterministic TF-IDF
// baseline. Training is plain gradient descent with exponential decay and
// Polyak averaging; all math is double precision so gradients can be
// checked against central finite differences.

#include <map>
#include <string>
#include <vector>

#include "tacticforge/search.hpp"

namespace tforge {

struct PolicyConfig {
  int dim = 64;            // embedding width d
  int hash_buckets = 16384;  // token hash table size H
  int combiner_hidden = 128;
  bool tactic_dependent = true;
  bool adam = false;       // optional adaptive-moment updates
  double dropout = 0.0;    // optional, applied to combiner inputs
  int num_tactics = 0;     // filled from the tactic set when 0
};

// A resolved training example (fingerprints already looked up).
struct TrainBatchItem {
  Goal goal;
  TacticId tactic = TacticId::REFL_TAC;
  std::vector<TermPtr> pos_args;
  std::vector<TermPtr> neg_args;  // hard negatives + sampled negatives
  bool empty_arglist = false;
};

class Policy {
 public:
  explicit Policy(PolicyConfig config, uint64_t init_seed = 1);

  const PolicyConfig& config() const { return config_; }
  uint64_t step() const { return step_; }

  // Tokenize-normalize-hash-sum encoding; hypotheses are dropped.
  std::vector<double> encode_goal(const Goal& goal, bool averaged = false) const;
  std::vector<double> encode_premise(const Theorem& th, bool averaged = false) const;
  std::vector<double> encode_premise_term(const TermPtr& concl, bool averaged = false) const;

  // Softmax logits over the tactic set.
  std::vector<double> rank_tactics(const Goal& goal, bool averaged = false) const;

  struct ArgScores {
    std::vector<double> scores;  // aligned with the candidate list
    double sentinel = 0.0;       // empty-argument-list score
  };
  // Scores candidate premise embeddings for (goal, tactic). In the
  // unconditioned variant the tactic is ignored.
  ArgScores rank_arguments(const std::vector<double>& goal_embedding, TacticId tactic,
                           const std::vector<const std::vector<double>*>& candidates,
                           bool averaged = false) const;

  // One gradient step; returns the batch loss. Throws NonFiniteLoss and
  // leaves parameters untouched if the loss is not finite.
  double train_step(const std::vector<TrainBatchItem>& batch, double learning_rate);
  // Forward-only loss and full analytic gradient, for the oracle check.
  double compute_loss(const std::vector<TrainBatchItem>& batch) const;
  std::vector<double> compute_gradient(const std::vector<TrainBatchItem>& batch) const;

  std::vector<double>& parameters() { return params_; }
  const std::vector<double>& parameters() const { return params_; }
  const std::vector<double>& averaged_parameters() const { return avg_; }

  struct GroupSpan {
    std::string name;
    size_t offset;
    size_t size;
  };
  std::vector<GroupSpan> parameter_groups() const;

  void save(const std::string& path) const;
  static Policy load(const std::string& path);

 private:
  struct Layout {
    size_t embed, goal_w, goal_b, prem_w, prem_b, tactic_table, s_w, s_b, c_w1, c_b1,
        c_w2, c_b2, sentinel, total;
  };
  Layout layout() const;
  std::vector<double> encode_tokens(const std::vector<std::string>& tokens,
                                    size_t tower_w, size_t tower_b,
                                    const std::vector<double>& p) const;
  double combiner_score(const std::vector<double>& g, const std::vector<double>& prem,
                        int tactic_index, const std::vector<double>& p) const;

  PolicyConfig config_;
  uint64_t step_ = 0;
  std::vector<double> params_;
  std::vector<double> avg_;
  std::vector<double> adam_m_, adam_v_;
  friend struct PolicyBackprop;
};

// Tokens of the normalized conclusion print (the model's input view).
std::vector<std::string> policy_tokens(const TermPtr& concl);

// --- premise-embedding cache -----------------------------------------------

struct PremiseEmbeddingCache {
  uint64_t checkpoint_step = 0;
  std::map<uint64_t, std::vector<double>> by_fp;
};

PremiseEmbeddingCache build_premise_cache(const Policy& policy,
                                          const std::vector<std::pair<uint64_t, Theorem>>& thms,
                                          bool averaged = false);
void save_premise_cache(const PremiseEmbeddingCache& cache, const std::string& path);
PremiseEmbeddingCache load_premise_cache(const std::string& path);

// --- TF-IDF baseline ----------------------------------------------------------

class TfIdfIndex {
 public:
  void add(uint64_t fp, const TermPtr& statement);
  void finalize();
  double score(const std::vector<std::string>& goal_tokens, uint64_t fp) const;

 private:
  std::map<std::string, size_t> df_;
  std::map<uint64_t, std::map<std::string, double>> docs_;  // fp -> tf
  size_t n_docs_ = 0;
  bool finalized_ = false;
};

// --- action providers ----------------------------------------------------------

// Learned provider: tactics by descending logits (ties by enumeration
// order), arguments by combiner score truncated to num_tactic_args; the
// sentinel suppresses arguments when it outranks every candidate.
ActionProvider learned_action_provider(const Policy& policy,
                                       const PremiseEmbeddingCache& cache,
                                       std::vector<uint64_t> candidates, int num_tactic_args,
                                       bool averaged = true);

// Deterministic comparison floor: empirical tactic frequencies as the prior
// and TF-IDF cosine for arguments.
ActionProvider baseline_action_provider(std::vector<double> tactic_prior,
                                        const TfIdfIndex& index,
                                        std::vector<uint64_t> candidates, int num_tactic_args);

// Table-2-analog baselines: a single ASM_MESON_TAC action, with no
// arguments or with TF-IDF-selected arguments.
ActionProvider meson_only_provider();
ActionProvider meson_tfidf_provider(const TfIdfIndex& index, std::vector<uint64_t> candidates,
                                    int num_tactic_args);

}  // namespace tforge
