#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tacticforge/search.hpp"
#include "tacticforge/sexpr.hpp"

using namespace tforge;

namespace {

Goal bool_goal(int i) {
  return Goal::make({}, Term::var("p" + std::to_string(i), ty_bool()));
}

Justification no_just() {
  return [](const std::vector<Theorem>&) -> Theorem {
    fail(Err::Internal, "synthetic edge replayed");
  };
}

// Declarative latched-fixpoint oracle over the raw graph structure. It keeps
// its own status state across events and re-runs all rules to a fixpoint
// after each one.
struct Oracle {
  std::vector<NodeStatus> nodes;
  std::vector<std::vector<EdgeStatus>> edges;

  void sync_shape(const ProofGraph& g) {
    while (nodes.size() < g.size()) {
      nodes.push_back(NodeStatus::Open);
      edges.emplace_back();
    }
    for (size_t i = 0; i < g.size(); ++i)
      while (edges[i].size() < g.node(i).edges.size()) {
        const TacticEdge& e = g.node(i).edges[edges[i].size()];
        edges[i].push_back(e.application_failed ? EdgeStatus::Failed : EdgeStatus::Pending);
      }
  }

  void fixpoint(const ProofGraph& g) {
    sync_shape(g);
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < g.size(); ++i) {
        const SearchNode& n = g.node(i);
        for (size_t e = 0; e < n.edges.size(); ++e) {
          if (edges[i][e] != EdgeStatus::Pending) continue;
          bool all_closed = true, any_failed = false;
          for (size_t sid : n.edges[e].subgoals) {
            if (nodes[sid] != NodeStatus::Closed) all_closed = false;
            if (nodes[sid] == NodeStatus::Failed) any_failed = true;
          }
          if (all_closed) {
            edges[i][e] = EdgeStatus::Closed;
            changed = true;
          } else if (any_failed) {
            edges[i][e] = EdgeStatus::Failed;
            changed = true;
          } else if (nodes[i] == NodeStatus::Closed) {
            edges[i][e] = EdgeStatus::Superfluous;
            changed = true;
          }
        }
        if (nodes[i] == NodeStatus::Open || nodes[i] == NodeStatus::Ignored) {
          bool any_closed = false;
          for (size_t e = 0; e < n.edges.size(); ++e)
            if (edges[i][e] == EdgeStatus::Closed) any_closed = true;
          if (any_closed) {
            nodes[i] = NodeStatus::Closed;
            changed = true;
            continue;
          }
          bool all_failed = n.expanded;
          for (size_t e = 0; e < n.edges.size(); ++e)
            if (edges[i][e] != EdgeStatus::Failed) all_failed = false;
          if (n.expanded && all_failed && nodes[i] != NodeStatus::Failed) {
            nodes[i] = NodeStatus::Failed;
            changed = true;
          }
        }
      }
      // Reachability-based ignoring, latched.
      std::vector<bool> reach(g.size(), false);
      if (nodes[0] != NodeStatus::Closed && nodes[0] != NodeStatus::Failed) {
        std::vector<size_t> stack{0};
        reach[0] = true;
        while (!stack.empty()) {
          size_t id = stack.back();
          stack.pop_back();
          if (nodes[id] == NodeStatus::Closed || nodes[id] == NodeStatus::Failed) continue;
          const SearchNode& n = g.node(id);
          for (size_t e = 0; e < n.edges.size(); ++e) {
            if (edges[id][e] != EdgeStatus::Pending) continue;
            for (size_t sid : n.edges[e].subgoals)
              if (!reach[sid]) {
                reach[sid] = true;
                stack.push_back(sid);
              }
          }
        }
      }
      for (size_t i = 0; i < g.size(); ++i)
        if (nodes[i] == NodeStatus::Open && !reach[i]) {
          nodes[i] = NodeStatus::Ignored;
          changed = true;
        }
    }
  }

  bool matches(const ProofGraph& g) const {
    for (size_t i = 0; i < g.size(); ++i) {
      if (g.node(i).status != nodes[i]) return false;
      for (size_t e = 0; e < g.node(i).edges.size(); ++e)
        if (g.node(i).edges[e].status != edges[i][e]) return false;
    }
    return true;
  }
};

bool status_leq(NodeStatus a, NodeStatus b) {  // a happened before b: monotone?
  return a == b || a == NodeStatus::Open;
}

}  // namespace

TEST_CASE("subgoal sharing") {
  ProofGraph g(bool_goal(0));
  // Two edges producing alpha-equal subgoals point at one node.
  TermPtr x = Term::var("x", ty_bool());
  TermPtr y = Term::var("y", ty_bool());
  Goal sub1 = Goal::make({}, mk_eq(mk_abs(x, x), mk_abs(x, x)));
  Goal sub2 = Goal::make({}, mk_eq(mk_abs(y, y), mk_abs(y, y)));
  g.add_success_edge(0, TacticId::CONJ_TAC, {}, {sub1}, no_just(), 1.0);
  g.add_success_edge(0, TacticId::EQ_TAC, {}, {sub2}, no_just(), 1.0);
  REQUIRE(g.size() == 2);
  CHECK(g.node(1).incoming.size() == 2);

  // Fresh goal makes a new open node.
  g.add_success_edge(0, TacticId::DISCH_TAC, {}, {bool_goal(5)}, no_just(), 1.0);
  REQUIRE(g.size() == 3);
  CHECK(g.node(2).status == NodeStatus::Open);
}

TEST_CASE("sharing an already-closed node closes the new edge") {
  ProofGraph g(bool_goal(0));
  g.add_success_edge(0, TacticId::CONJ_TAC, {}, {bool_goal(1), bool_goal(2)}, no_just(), 1.0);
  // Close node for goal 1 via an empty-subgoal edge.
  g.add_success_edge(1, TacticId::REFL_TAC, {}, {}, no_just(), 1.0);
  CHECK(g.node(1).status == NodeStatus::Closed);
  CHECK(g.node(0).status == NodeStatus::Open);  // sibling still open
  // A second edge from the root reaching the closed goal alone closes
  // transitively.
  g.add_success_edge(0, TacticId::DISJ1_TAC, {}, {bool_goal(1)}, no_just(), 1.0);
  CHECK(g.node(0).status == NodeStatus::Closed);
  // The other root edge is now superfluous.
  CHECK(g.node(0).edges[0].status == EdgeStatus::Superfluous);
  // Its exclusive descendant is ignored.
  CHECK(g.node(2).status == NodeStatus::Ignored);
}

TEST_CASE("propagate_closed examples") {
  ProofGraph g(bool_goal(0));
  g.add_success_edge(0, TacticId::DISCH_TAC, {}, {bool_goal(1)}, no_just(), 1.0);
  g.add_success_edge(1, TacticId::REFL_TAC, {}, {}, no_just(), 1.0);
  CHECK(g.root_closed());

  ProofGraph g2(bool_goal(0));
  g2.add_success_edge(0, TacticId::CONJ_TAC, {}, {bool_goal(1), bool_goal(2)}, no_just(), 1.0);
  g2.add_success_edge(1, TacticId::REFL_TAC, {}, {}, no_just(), 1.0);
  CHECK(g2.node(0).edges[0].status == EdgeStatus::Pending);
  CHECK_FALSE(g2.root_closed());
  g2.add_success_edge(2, TacticId::REFL_TAC, {}, {}, no_just(), 1.0);
  CHECK(g2.root_closed());
}

TEST_CASE("diamond closure through a shared node") {
  // root -> e1 -> {a}, root -> e2 -> {b}; a -> {c}, b -> {c}; closing c
  // closes both a and b in one propagation, then the root.
  ProofGraph g(bool_goal(0));
  g.add_success_edge(0, TacticId::CONJ_TAC, {}, {bool_goal(1), bool_goal(2)}, no_just(), 1.0);
  g.add_success_edge(1, TacticId::DISCH_TAC, {}, {bool_goal(3)}, no_just(), 1.0);
  g.add_success_edge(2, TacticId::DISCH_TAC, {}, {bool_goal(3)}, no_just(), 1.0);
  REQUIRE(g.size() == 4);
  g.add_success_edge(3, TacticId::REFL_TAC, {}, {}, no_just(), 1.0);
  CHECK(g.node(1).status == NodeStatus::Closed);
  CHECK(g.node(2).status == NodeStatus::Closed);
  CHECK(g.root_closed());
}

TEST_CASE("propagate_failed examples") {
  // Node with zero successful applications fails and takes the parent edge
  // with it.
  ProofGraph g(bool_goal(0));
  g.add_success_edge(0, TacticId::DISCH_TAC, {}, {bool_goal(1)}, no_just(), 1.0);
  g.add_failed_edge(1, TacticId::REFL_TAC, {}, false, 1.0);
  g.finish_expansion(1);
  CHECK(g.node(1).status == NodeStatus::Failed);
  CHECK(g.node(0).edges[0].status == EdgeStatus::Failed);
  CHECK_FALSE(g.root_failed());  // root not yet expanded
  g.finish_expansion(0);
  CHECK(g.root_failed());

  // Sibling with another live incoming edge is not ignored.
  ProofGraph g2(bool_goal(0));
  g2.add_success_edge(0, TacticId::CONJ_TAC, {}, {bool_goal(1), bool_goal(2)}, no_just(), 1.0);
  g2.add_success_edge(0, TacticId::EQ_TAC, {}, {bool_goal(2)}, no_just(), 1.0);
  // Fail goal 1: the first edge dies, but goal 2 lives through the second.
  g2.finish_expansion(1);
  CHECK(g2.node(1).status == NodeStatus::Failed);
  CHECK(g2.node(0).edges[0].status == EdgeStatus::Failed);
  CHECK(g2.node(2).status == NodeStatus::Open);
}

TEST_CASE("no oscillation: revisiting a formula reuses the node") {
  ProofGraph g(bool_goal(0));
  g.add_success_edge(0, TacticId::PURE_ONCE_REWRITE_TAC, {}, {bool_goal(1)}, no_just(), 1.0);
  size_t before = g.size();
  // Rewriting back to the root formula: fingerprint hit, no new node.
  g.add_success_edge(1, TacticId::PURE_ONCE_REWRITE_TAC, {}, {bool_goal(0)}, no_just(), 1.0);
  CHECK(g.size() == before);
  CHECK(g.node(0).incoming.size() == 1);
}

TEST_CASE("random graphs match the brute-force status oracle") {
  Rng rng(20260810);
  for (int iter = 0; iter < 300; ++iter) {
    ProofGraph g(bool_goal(0));
    Oracle oracle;
    oracle.fixpoint(g);
    std::vector<NodeStatus> last_status{g.node(0).status};

    int events = int(rng.uniform(4, 24));
    for (int ev = 0; ev < events; ++ev) {
      // Collect expandable nodes.
      std::vector<size_t> open;
      for (size_t i = 0; i < g.size(); ++i)
        if (g.node(i).status == NodeStatus::Open && !g.node(i).expanded && g.size() <= 12)
          open.push_back(i);
      if (open.empty()) break;
      size_t node = open[rng.uniform(0, open.size() - 1)];
      switch (rng.uniform(0, 3)) {
        case 0: {  // success edge with 0-2 subgoals from a small pool
          size_t k = rng.uniform(0, 2);
          std::vector<Goal> subs;
          for (size_t i = 0; i < k; ++i) subs.push_back(bool_goal(int(rng.uniform(0, 7))));
          g.add_success_edge(node, TacticId::CONJ_TAC, {}, subs, no_just(), 1.0);
          break;
        }
        case 1:
          g.add_failed_edge(node, TacticId::REFL_TAC, {}, rng.uniform(0, 1) == 0, 1.0);
          break;
        default:
          g.finish_expansion(node);
          break;
      }
      oracle.fixpoint(g);
      REQUIRE(oracle.matches(g));
      // Monotonicity: open may change, decided statuses never do.
      last_status.resize(g.size(), NodeStatus::Open);
      for (size_t i = 0; i < g.size(); ++i) {
        CHECK(status_leq(last_status[i], g.node(i).status));
        last_status[i] = g.node(i).status;
      }
    }
  }
}

TEST_CASE("bfs_prove on trivial goals") {
  Theory thy = Theory::boot();
  TacticEngine engine(thy);
  TermPtr x = Term::var("x", ty_bool());
  Goal refl_goal = Goal::make({}, mk_eq(x, x));

  ActionProvider refl_first = [](const Goal&) {
    return std::vector<Action>{{TacticId::REFL_TAC, {}}, {TacticId::CONJ_TAC, {}}};
  };
  ArgResolver no_args = [](uint64_t) { return std::optional<Theorem>{}; };

  ProverOptions opts;
  ProofResult r = bfs_prove(engine, refl_goal, opts, refl_first, no_args);
  CHECK(r.outcome == ProofOutcome::Proved);
  CHECK(r.nodes == 1);
  REQUIRE(r.log.has_value());
  CHECK(r.log->steps.size() == 1);

  // Budget exhaustion on a conjunction split with node_budget 1.
  TermPtr p = Term::var("p", ty_bool());
  TermPtr q = Term::var("q", ty_bool());
  Goal conj_goal = Goal::make({}, mk_conj(mk_eq(p, p), mk_eq(q, q)));
  ActionProvider conj_first = [](const Goal&) {
    return std::vector<Action>{{TacticId::CONJ_TAC, {}}, {TacticId::REFL_TAC, {}}};
  };
  ProverOptions tight;
  tight.node_budget = 1;
  ProofResult r2 = bfs_prove(engine, conj_goal, tight, conj_first, no_args);
  CHECK(r2.outcome == ProofOutcome::BudgetExhausted);

  // With a normal budget the same goal closes and the log replays subgoals.
  ProofResult r3 = bfs_prove(engine, conj_goal, opts, conj_first, no_args);
  CHECK(r3.outcome == ProofOutcome::Proved);
  REQUIRE(r3.log.has_value());
  CHECK(r3.log->steps.size() == 3);

  // Unprovable goal with useless tactics fails.
  Goal stuck = Goal::make({}, p);
  ProofResult r4 = bfs_prove(engine, stuck, opts, refl_first, no_args);
  CHECK(r4.outcome == ProofOutcome::Failed);
}

TEST_CASE("proof log round trips through NDJSON") {
  Theory thy = Theory::boot();
  TermPtr p = Term::var("p", ty_bool());
  ProofLog log;
  log.name = "demo";
  log.root = Goal::make({}, mk_conj(p, p));
  ProofLogStep step{log.root, TacticId::CONJ_TAC, {42, 7}, {Goal::make({}, p), Goal::make({}, p)}};
  log.steps.push_back(step);
  log.nodes = 3;
  std::string text = proof_log_to_ndjson(log);
  ProofLog back = proof_log_from_ndjson(text, thy.env);
  CHECK(back.name == "demo");
  CHECK(goal_alpha_equal(back.root, log.root));
  REQUIRE(back.steps.size() == 1);
  CHECK(back.steps[0].tactic == TacticId::CONJ_TAC);
  CHECK(back.steps[0].args == std::vector<uint64_t>{42, 7});
  CHECK(back.steps[0].subgoals.size() == 2);
  CHECK(proof_log_to_ndjson(back) == text);
}

TEST_CASE("sample_options ranges and determinism") {
  ProverOptions a = sample_options(7);
  ProverOptions b = sample_options(7);
  CHECK(a.max_top_tactics == b.max_top_tactics);
  CHECK(a.max_successful_apps == b.max_successful_apps);
  CHECK(a.num_tactic_args == b.num_tactic_args);

  int min_top = 99, max_top = 0, min_succ = 99, max_succ = 0, min_args = 99, max_args = 0;
  for (uint64_t seed = 0; seed < 10000; ++seed) {
    ProverOptions o = sample_options(seed);
    min_top = std::min(min_top, o.max_top_tactics);
    max_top = std::max(max_top, o.max_top_tactics);
    min_succ = std::min(min_succ, o.max_successful_apps);
    max_succ = std::max(max_succ, o.max_successful_apps);
    min_args = std::min(min_args, o.num_tactic_args);
    max_args = std::max(max_args, o.num_tactic_args);
  }
  CHECK(min_top == 6);
  CHECK(max_top == 16);
  CHECK(min_succ == 3);
  CHECK(max_succ == 6);
  CHECK(min_args == 1);
  CHECK(max_args == 32);
}
