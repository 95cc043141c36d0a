#pragma once

// Proof search graph: goals are nodes, tactic applications are labelled
// hyperedges. Closed/failed statuses propagate incrementally; goals are
// shared by fingerprint so rewriting loops cannot grow the search. On top
// sits a breadth-first search under the randomized prover options.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tacticforge/tactics.hpp"

namespace tforge {

enum class NodeStatus { Open, Closed, Failed, Ignored };
enum class EdgeStatus { Pending, Closed, Failed, Superfluous };

const char* node_status_name(NodeStatus s);
const char* edge_status_name(EdgeStatus s);

struct ProverOptions {
  int max_top_tactics = 16;
  int max_successful_apps = 6;
  int num_tactic_args = 32;
  int node_budget = 100;
  double total_timeout_s = 300.0;
  double tactic_timeout_s = 5.0;
};

// Uniform samples from the randomized-search ranges: max_top_tactics in
// [6,16], max_successful_apps in [3,6], num_tactic_args in [1,32].
ProverOptions sample_options(uint64_t rng_seed);

struct TacticEdge {
  TacticId tactic = TacticId::REFL_TAC;
  std::vector<uint64_t> args;
  std::vector<size_t> subgoals;  // node ids
  EdgeStatus status = EdgeStatus::Pending;
  bool application_failed = false;  // Failure/Timeout at application time
  bool timed_out = false;
  double elapsed_ms = 0.0;
  Justification justification;  // Success edges only
};

struct SearchNode {
  Goal goal;
  uint64_t fp = 0;
  NodeStatus status = NodeStatus::Open;
  bool expanded = false;
  size_t generation = 0;
  std::vector<std::pair<size_t, size_t>> incoming;  // (parent node, edge index)
  std::vector<TacticEdge> edges;
};

class ProofGraph {
 public:
  explicit ProofGraph(Goal root);

  size_t root() const { return 0; }
  size_t size() const { return nodes_.size(); }
  const SearchNode& node(size_t i) const { return nodes_.at(i); }

  // Success edge: inserts subgoals (shared by fingerprint), propagates any
  // stored closed/failed information, returns the edge index.
  size_t add_success_edge(size_t node, TacticId tactic, std::vector<uint64_t> args,
                          const std::vector<Goal>& subgoals, Justification justification,
                          double elapsed_ms);
  // Failure/Timeout edge.
  size_t add_failed_edge(size_t node, TacticId tactic, std::vector<uint64_t> args,
                         bool timed_out, double elapsed_ms);
  // Marks the node fully expanded; a node with no viable edges fails.
  void finish_expansion(size_t node);

  bool root_closed() const { return nodes_[0].status == NodeStatus::Closed; }
  bool root_failed() const { return nodes_[0].status == NodeStatus::Failed; }

  // The by-construction proof tree: lowest-index closed edge per node.
  // Valid once the root is closed.
  std::vector<std::pair<size_t, size_t>> proof_tree() const;  // (node, edge)

 private:
  size_t insert_subgoal(const Goal& g, size_t generation);
  void propagate_closed(size_t node);
  void propagate_failed(size_t node);
  void check_edge_closure(size_t node, size_t edge_idx);
  void check_node_failure(size_t node);
  void recompute_ignored();

  std::vector<SearchNode> nodes_;
  std::vector<std::pair<uint64_t, size_t>> by_fp_;  // sorted fingerprint index
};

// --- proof logs ---------------------------------------------------------------

struct ProofLogStep {
  Goal goal;
  TacticId tactic;
  std::vector<uint64_t> args;
  std::vector<Goal> subgoals;
};

struct ProofLog {
  std::string name;  // theorem name when known
  Goal root;
  std::vector<ProofLogStep> steps;  // depth-first preorder
  // Graph summary (zeros for replayed human scripts).
  size_t nodes = 0, closed = 0, failed = 0, ignored = 0;
  bool proved = true;
};

std::string proof_log_to_ndjson(const ProofLog& log);
ProofLog proof_log_from_ndjson(const std::string& text, const Environment& env);

// --- breadth-first search ------------------------------------------------------

struct Action {
  TacticId tactic;
  std::vector<uint64_t> args;
};

// Ranked tactic applications for a goal, already truncated to
// num_tactic_args arguments.
using ActionProvider = std::function<std::vector<Action>(const Goal&)>;
// Fingerprint resolution against the theorem registry.
using ArgResolver = std::function<std::optional<Theorem>(uint64_t)>;

enum class ProofOutcome { Proved, Failed, BudgetExhausted, Timeout };

struct ProofResult {
  ProofOutcome outcome = ProofOutcome::Failed;
  std::optional<ProofLog> log;  // Proved only
  size_t nodes = 0;
  size_t edges = 0;
  size_t successful_apps = 0;
  double elapsed_s = 0.0;
};

ProofResult bfs_prove(const TacticEngine& engine, const Goal& root_goal,
                      const ProverOptions& options, const ActionProvider& provider,
                      const ArgResolver& resolver);

}  // namespace tforge
