#include "tacticforge/search.hpp"

#include <algorithm>
#include <deque>

#include <json.hpp>

#include "tacticforge/sexpr.hpp"

namespace tforge {

using nlohmann::json;

const char* node_status_name(NodeStatus s) {
  switch (s) {
    case NodeStatus::Open: return "OPEN";
    case NodeStatus::Closed: return "CLOSED";
    case NodeStatus::Failed: return "FAILED";
    case NodeStatus::Ignored: return "IGNORED";
  }
  return "?";
}

const char* edge_status_name(EdgeStatus s) {
  switch (s) {
    case EdgeStatus::Pending: return "PENDING";
    case EdgeStatus::Closed: return "CLOSED";
    case EdgeStatus::Failed: return "FAILED";
    case EdgeStatus::Superfluous: return "SUPERFLUOUS";
  }
  return "?";
}

ProverOptions sample_options(uint64_t rng_seed) {
  Rng rng(rng_seed);
  ProverOptions o;
  o.max_top_tactics = int(rng.uniform(6, 16));
  o.max_successful_apps = int(rng.uniform(3, 6));
  o.num_tactic_args = int(rng.uniform(1, 32));
  return o;
}

ProofGraph::ProofGraph(Goal root) {
  SearchNode n;
  n.fp = root.fingerprint();
  n.goal = std::move(root);
  nodes_.push_back(std::move(n));
  by_fp_.emplace_back(nodes_[0].fp, 0);
}

size_t ProofGraph::insert_subgoal(const Goal& g, size_t generation) {
  uint64_t fp = g.fingerprint();
  auto it = std::lower_bound(by_fp_.begin(), by_fp_.end(), std::make_pair(fp, size_t(0)));
  if (it != by_fp_.end() && it->first == fp) return it->second;
  SearchNode n;
  n.goal = g;
  n.fp = fp;
  n.generation = generation;
  size_t id = nodes_.size();
  nodes_.push_back(std::move(n));
  by_fp_.insert(it, {fp, id});
  return id;
}

size_t ProofGraph::add_success_edge(size_t node, TacticId tactic, std::vector<uint64_t> args,
                                    const std::vector<Goal>& subgoals,
                                    Justification justification, double elapsed_ms) {
  // insert_subgoal may reallocate nodes_, so no references are held here.
  size_t generation = nodes_.at(node).generation;
  TacticEdge e;
  e.tactic = tactic;
  e.args = std::move(args);
  e.elapsed_ms = elapsed_ms;
  e.justification = std::move(justification);
  for (const auto& sub : subgoals) e.subgoals.push_back(insert_subgoal(sub, generation + 1));
  size_t edge_idx = nodes_[node].edges.size();
  nodes_[node].edges.push_back(std::move(e));
  for (size_t sid : nodes_[node].edges[edge_idx].subgoals)
    nodes_[sid].incoming.emplace_back(node, edge_idx);

  // Previously stored information propagates into the new edge immediately.
  bool any_failed = false;
  for (size_t sid : nodes_[node].edges[edge_idx].subgoals)
    if (nodes_[sid].status == NodeStatus::Failed) any_failed = true;
  if (any_failed) {
    nodes_[node].edges[edge_idx].status = EdgeStatus::Failed;
    if (nodes_[node].expanded) check_node_failure(node);
  } else {
    check_edge_closure(node, edge_idx);
  }
  recompute_ignored();
  return edge_idx;
}

size_t ProofGraph::add_failed_edge(size_t node, TacticId tactic, std::vector<uint64_t> args,
                                   bool timed_out, double elapsed_ms) {
  SearchNode& n = nodes_.at(node);
  TacticEdge e;
  e.tactic = tactic;
  e.args = std::move(args);
  e.status = EdgeStatus::Failed;
  e.application_failed = true;
  e.timed_out = timed_out;
  e.elapsed_ms = elapsed_ms;
  n.edges.push_back(std::move(e));
  return n.edges.size() - 1;
}

void ProofGraph::finish_expansion(size_t node) {
  nodes_.at(node).expanded = true;
  check_node_failure(node);
  recompute_ignored();
}

void ProofGraph::check_edge_closure(size_t node, size_t edge_idx) {
  TacticEdge& e = nodes_.at(node).edges.at(edge_idx);
  if (e.status != EdgeStatus::Pending) return;
  for (size_t sid : e.subgoals)
    if (nodes_[sid].status != NodeStatus::Closed) return;
  e.status = EdgeStatus::Closed;
  if (nodes_[node].status == NodeStatus::Open || nodes_[node].status == NodeStatus::Ignored)
    propagate_closed(node);
}

void ProofGraph::propagate_closed(size_t node) {
  SearchNode& n = nodes_[node];
  n.status = NodeStatus::Closed;
  // Alternatives to the closing edge become superfluous; an alternative
  // whose subgoals happen to be all closed counts as closed itself.
  for (auto& e : n.edges) {
    if (e.status != EdgeStatus::Pending) continue;
    bool all_closed = true;
    for (size_t sid : e.subgoals)
      if (nodes_[sid].status != NodeStatus::Closed) all_closed = false;
    e.status = all_closed ? EdgeStatus::Closed : EdgeStatus::Superfluous;
  }
  for (auto [pnode, eidx] : n.incoming) check_edge_closure(pnode, eidx);
}

void ProofGraph::check_node_failure(size_t node) {
  SearchNode& n = nodes_.at(node);
  if (n.status != NodeStatus::Open && n.status != NodeStatus::Ignored) return;
  if (!n.expanded) return;
  for (const auto& e : n.edges)
    if (e.status == EdgeStatus::Pending || e.status == EdgeStatus::Closed) return;
  propagate_failed(node);
}

void ProofGraph::propagate_failed(size_t node) {
  SearchNode& n = nodes_[node];
  n.status = NodeStatus::Failed;
  for (auto [pnode, eidx] : n.incoming) {
    TacticEdge& e = nodes_[pnode].edges[eidx];
    if (e.status == EdgeStatus::Pending) {
      e.status = EdgeStatus::Failed;
      check_node_failure(pnode);
    }
  }
}

void ProofGraph::recompute_ignored() {
  // Open nodes no longer reachable from the root through pending edges are
  // dropped from the queue; the marking is monotone.
  if (nodes_[0].status == NodeStatus::Closed || nodes_[0].status == NodeStatus::Failed) {
    for (auto& n : nodes_)
      if (n.status == NodeStatus::Open) n.status = NodeStatus::Ignored;
    return;
  }
  std::vector<bool> reach(nodes_.size(), false);
  std::deque<size_t> queue{0};
  reach[0] = true;
  while (!queue.empty()) {
    size_t id = queue.front();
    queue.pop_front();
    const SearchNode& n = nodes_[id];
    if (n.status == NodeStatus::Closed || n.status == NodeStatus::Failed) continue;
    for (const auto& e : n.edges) {
      if (e.status != EdgeStatus::Pending) continue;
      for (size_t sid : e.subgoals)
        if (!reach[sid]) {
          reach[sid] = true;
          queue.push_back(sid);
        }
    }
  }
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].status == NodeStatus::Open && !reach[i]) nodes_[i].status = NodeStatus::Ignored;
}

std::vector<std::pair<size_t, size_t>> ProofGraph::proof_tree() const {
  std::vector<std::pair<size_t, size_t>> out;
  if (!root_closed()) return out;
  std::vector<size_t> stack{0};
  std::vector<bool> visited(nodes_.size(), false);
  while (!stack.empty()) {
    size_t id = stack.back();
    stack.pop_back();
    if (visited[id]) continue;
    visited[id] = true;
    const SearchNode& n = nodes_[id];
    size_t chosen = n.edges.size();
    for (size_t i = 0; i < n.edges.size(); ++i)
      if (n.edges[i].status == EdgeStatus::Closed) {
        chosen = i;
        break;
      }
    if (chosen == n.edges.size()) fail(Err::Internal, "closed node without closed edge");
    out.emplace_back(id, chosen);
    const auto& subs = n.edges[chosen].subgoals;
    for (auto it = subs.rbegin(); it != subs.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

// --- proof log serialization ---------------------------------------------------

namespace {

json goal_to_json(const Goal& g) {
  json hyps = json::array();
  for (const auto& h : g.hyps) hyps.push_back(print_term(h));
  return json{{"hyps", hyps}, {"concl", print_term(g.concl)}};
}

Goal goal_from_json(const json& j, const Environment& env) {
  std::vector<TermPtr> hyps;
  for (const auto& h : j.at("hyps")) hyps.push_back(parse_term(h.get<std::string>(), env));
  return Goal::make(std::move(hyps), parse_term(j.at("concl").get<std::string>(), env));
}

}  // namespace

std::string proof_log_to_ndjson(const ProofLog& log) {
  std::string out;
  for (const auto& step : log.steps) {
    json args = json::array();
    for (uint64_t fp : step.args) args.push_back(u64_to_dec(fp));
    json subgoals = json::array();
    for (const auto& sg : step.subgoals) subgoals.push_back(goal_to_json(sg));
    json j{{"goal", goal_to_json(step.goal)},
           {"tactic", tactic_name(step.tactic)},
           {"args", args},
           {"status", "SUCCESS"},
           {"subgoals", subgoals}};
    out += j.dump();
    out += '\n';
  }
  json summary{{"kind", "summary"},
               {"name", log.name},
               {"root", goal_to_json(log.root)},
               {"proved", log.proved},
               {"nodes", log.nodes},
               {"closed", log.closed},
               {"failed", log.failed},
               {"ignored", log.ignored}};
  out += summary.dump();
  out += '\n';
  return out;
}

ProofLog proof_log_from_ndjson(const std::string& text, const Environment& env) {
  ProofLog log;
  bool have_summary = false;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    json j = json::parse(line);
    if (j.contains("kind") && j.at("kind") == "summary") {
      log.name = j.value("name", "");
      log.root = goal_from_json(j.at("root"), env);
      log.proved = j.value("proved", true);
      log.nodes = j.value("nodes", size_t(0));
      log.closed = j.value("closed", size_t(0));
      log.failed = j.value("failed", size_t(0));
      log.ignored = j.value("ignored", size_t(0));
      have_summary = true;
      continue;
    }
    ProofLogStep step;
    step.goal = goal_from_json(j.at("goal"), env);
    auto tid = tactic_from_name(j.at("tactic").get<std::string>());
    if (!tid) fail(Err::UnknownTag, "unknown tactic in proof log");
    step.tactic = *tid;
    for (const auto& a : j.at("args")) {
      auto fp = dec_to_u64(a.get<std::string>());
      if (!fp) fail(Err::UnresolvableArgument, "bad fingerprint in proof log");
      step.args.push_back(*fp);
    }
    for (const auto& sg : j.at("subgoals")) step.subgoals.push_back(goal_from_json(sg, env));
    log.steps.push_back(std::move(step));
  }
  if (!have_summary) {
    if (log.steps.empty()) fail(Err::EmptyInput, "empty proof log");
    log.root = log.steps.front().goal;
  }
  return log;
}

// --- breadth-first search -------------------------------------------------------

ProofResult bfs_prove(const TacticEngine& engine, const Goal& root_goal,
                      const ProverOptions& options, const ActionProvider& provider,
                      const ArgResolver& resolver) {
  auto start = std::chrono::steady_clock::now();
  Deadline total(options.total_timeout_s);
  ProofGraph graph(root_goal);
  std::deque<size_t> queue{0};
  ProofResult result;

  auto finish = [&](ProofOutcome outcome) {
    result.outcome = outcome;
    result.nodes = graph.size();
    result.edges = 0;
    for (size_t i = 0; i < graph.size(); ++i) result.edges += graph.node(i).edges.size();
    result.elapsed_s = seconds_since(start);
    if (outcome == ProofOutcome::Proved) {
      ProofLog log;
      log.root = root_goal;
      for (auto [nid, eidx] : graph.proof_tree()) {
        const SearchNode& n = graph.node(nid);
        const TacticEdge& e = n.edges[eidx];
        ProofLogStep step{n.goal, e.tactic, e.args, {}};
        for (size_t sid : e.subgoals) step.subgoals.push_back(graph.node(sid).goal);
        log.steps.push_back(std::move(step));
      }
      log.nodes = graph.size();
      for (size_t i = 0; i < graph.size(); ++i) {
        NodeStatus s = graph.node(i).status;
        log.closed += s == NodeStatus::Closed;
        log.failed += s == NodeStatus::Failed;
        log.ignored += s == NodeStatus::Ignored;
      }
      result.log = std::move(log);
    }
    return result;
  };

  while (!queue.empty()) {
    if (graph.root_closed()) return finish(ProofOutcome::Proved);
    if (graph.root_failed()) return finish(ProofOutcome::Failed);
    if (total.expired()) return finish(ProofOutcome::Timeout);

    size_t node_id = queue.front();
    queue.pop_front();
    if (graph.node(node_id).status != NodeStatus::Open) continue;  // discarded
    if (graph.node(node_id).expanded) continue;

    Goal goal = graph.node(node_id).goal;
    std::vector<Action> actions = provider(goal);
    int attempts = 0, successes = 0;
    for (const Action& action : actions) {
      if (attempts >= options.max_top_tactics) break;
      if (successes >= options.max_successful_apps) break;
      if (total.expired()) break;
      if (graph.root_closed()) break;
      ++attempts;

      std::vector<Theorem> args;
      bool unresolved = false;
      for (uint64_t fp : action.args) {
        auto th = resolver(fp);
        if (!th) {
          unresolved = true;
          break;
        }
        args.push_back(*th);
      }
      auto t0 = std::chrono::steady_clock::now();
      if (unresolved) {
        graph.add_failed_edge(node_id, action.tactic, action.args, false, 0.0);
        continue;
      }
      TacticResult r = engine.apply(goal, action.tactic, args, options.tactic_timeout_s);
      double ms = seconds_since(t0) * 1000.0;
      if (!is_success(r)) {
        graph.add_failed_edge(node_id, action.tactic, action.args, is_timeout(r), ms);
        continue;
      }
      ++successes;
      ++result.successful_apps;
      const TacticSuccess& s = as_success(r);
      size_t before = graph.size();
      graph.add_success_edge(node_id, action.tactic, action.args, s.subgoals,
                             s.justification, ms);
      for (size_t fresh = before; fresh < graph.size(); ++fresh) queue.push_back(fresh);
      if (graph.size() > size_t(options.node_budget)) {
        graph.finish_expansion(node_id);
        if (graph.root_closed()) return finish(ProofOutcome::Proved);
        return finish(ProofOutcome::BudgetExhausted);
      }
    }
    graph.finish_expansion(node_id);
  }

  if (graph.root_closed()) return finish(ProofOutcome::Proved);
  return finish(ProofOutcome::Failed);
}

}  // namespace tforge
