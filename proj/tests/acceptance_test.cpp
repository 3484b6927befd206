// Copyright 2026 The addrnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL
// line; the binary exits non-zero if any criterion fails. Run a single
// criterion by number: `acceptance 4`.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "addrnet/dsl.hpp"
#include "addrnet/facts.hpp"
#include "addrnet/monitor.hpp"
#include "addrnet/query.hpp"
#include "addrnet/scenario.hpp"
#include "addrnet/trace.hpp"
#include "support.hpp"

using namespace addrnet;
using addrnet::testing::fixture_path;
using addrnet::testing::oracle_walk;
using addrnet::testing::random_net;
using addrnet::testing::read_file;
using addrnet::testing::WalkOutcome;

namespace {

struct Failure {
  std::string what;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

template <typename T>
T must(Result<T> r, const std::string& what) {
  require(r.ok(), what + (r.ok() ? "" : ": " + to_string(r.error())));
  return r.take();
}

std::pair<DecodingNet, ConfigSpaces> load_fixture(const std::string& name) {
  return must(dsl::compile_text(read_file(fixture_path(name))),
              name + " compiles");
}

// --------------------------------------------------------------- AC1

void topology_suite() {
  const std::uint64_t dram = 0x10000, half = 0x8000, priv = 0x4000;
  struct Case {
    dsl::TopologyKind kind;
    const char* fixture;
    bool swapped;
    bool with_private;
  };
  const std::vector<Case> cases{
      {dsl::TopologyKind::uniform, "uniform.dsl", false, false},
      {dsl::TopologyKind::swapped, "swapped.dsl", true, false},
      {dsl::TopologyKind::private_, "private.dsl", false, true},
      {dsl::TopologyKind::private_swapped, "private_swapped.dsl", true, true},
  };
  for (const Case& c : cases) {
    auto [net, conf] = load_fixture(c.fixture);
    auto built =
        must(dsl::compile(must(dsl::builtin_topology(c.kind, {dram, priv}),
                               "builtin topology")),
             "builtin compiles");
    require(built.first == net && built.second == conf,
            std::string{c.fixture} + " matches the builtin topology");
    require(well_formed(net).empty(),
            std::string{c.fixture} + " is well formed");

    const std::uint64_t window = dram + (c.with_private ? priv : 0);
    for (Address a = 0; a < window; ++a) {
      Result<Name> r0 = resolve(net, {"core0", a});
      Result<Name> r1 = resolve(net, {"core1", a});
      require(r0.ok() && r1.ok(), "both cores decode every window address");
      if (a < dram) {
        Address swapped_a = c.swapped ? (a + half) % dram : a;
        Result<Name> r1s = resolve(net, {"core1", swapped_a});
        require(r1s.ok() && r0.value() == r1s.value(),
                "shared window equality at " + hex(a));
      } else {
        require(r0.value().node == "core0_mem" &&
                    r1.value().node == "core1_mem",
                "private window stays private at " + hex(a));
      }
      if (c.with_private) {
        require(r1.value().node != "core0_mem",
                "core1 never reaches core0's private memory");
        require(r0.value().node != "core1_mem",
                "core0 never reaches core1's private memory");
      }
    }
  }
}

// --------------------------------------------------------------- AC2

void mapping_trace_criterion() {
  auto [net, conf] = load_fixture("mapping_platform.dsl");
  std::string text = read_file(fixture_path("mapping_trace.txt"));
  Trace trace = must(parse_trace(text), "mapping trace parses");
  Verdict full = run_trace(net, conf, trace);
  require(full.valid, "mapping trace validates: " + format_verdict(full));
  require(check_static_security(full.state).empty(),
          "final state passes the static check");

  for (std::size_t k = 0; k <= trace.ops.size(); ++k) {
    Trace prefix;
    prefix.ops.assign(trace.ops.begin(),
                      trace.ops.begin() + static_cast<std::ptrdiff_t>(k));
    require(run_trace(net, conf, prefix).valid,
            "prefix of length " + std::to_string(k) + " validates");
  }

  // Dropping a right (or a producing op) rejects at the first line that
  // needed it.
  struct Mutation {
    const char* removed;   // substring of the removed line
    const char* rejected;  // substring of the line that must reject
    Errc code;
  };
  const std::vector<Mutation> mutations{
      {"init acm alice ram0 grant", "retype alice ram0",
       Errc::insufficient_rights},
      {"init acm alice ram1 grant", "retype alice ram1",
       Errc::insufficient_rights},
      {"retype alice ram0 Frame", "map alice vspace0", Errc::unknown_object},
      {"retype alice ram1 TStructure", "derive alice pt0",
       Errc::unknown_object},
      {"derive alice pt0", "map alice vspace0", Errc::unknown_space},
  };
  for (const Mutation& m : mutations) {
    std::istringstream in{text};
    std::string line, mutated;
    int line_no = 0, expect_line = -1;
    while (std::getline(in, line)) {
      if (line.find(m.removed) != std::string::npos) continue;
      ++line_no;
      if (line.find(m.rejected) != std::string::npos) expect_line = line_no;
      mutated += line + "\n";
    }
    require(expect_line > 0, "mutation target found");
    Trace t = must(parse_trace(mutated), "mutated trace parses");
    Verdict v = run_trace(net, conf, t);
    require(!v.valid, std::string{"removing '"} + m.removed + "' rejects");
    require(v.rejected_line == expect_line && v.error.code == m.code,
            std::string{"removing '"} + m.removed + "' rejects at line " +
                std::to_string(expect_line) + " with " +
                std::string{errc_name(m.code)} + ", got " +
                format_verdict(v));
  }
}

// --------------------------------------------------------------- AC3

void bug_corpus() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry :
       std::filesystem::directory_iterator(ADDRNET_CORPUS_DIR)) {
    if (entry.path().extension() == ".scenario") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::map<Scenario::BugClass, int> per_class;
  int rejected_kind = 0;
  for (const auto& path : files) {
    Scenario sc = must(parse_scenario(read_file(path.string())),
                       path.filename().string() + " parses");
    ScenarioOutcome guarded = run_scenario(sc);
    require(guarded.pass,
            sc.name + " rejects as expected (" + guarded.detail + ")");
    if (sc.expect_kind == Scenario::ExpectKind::rejected) {
      ++rejected_kind;
      ++per_class[sc.bug_class];
      ScenarioOutcome stripped = run_scenario(sc, MonitorOptions{false});
      require(!stripped.guard_applied,
              sc.name + " no longer rejects at the guard point without "
                        "guards (" +
                  stripped.detail + ")");
    }
  }
  require(rejected_kind >= 9, "at least 9 guard-rejection scenarios");
  require(per_class[Scenario::BugClass::policy_enforcement] >= 3 &&
              per_class[Scenario::BugClass::partitioning] >= 3 &&
              per_class[Scenario::BugClass::name_resolution] >= 3,
          "at least 3 guard-rejection scenarios per class");
}

// --------------------------------------------------------------- AC4

void oracle_equivalence() {
  std::mt19937 pick{42};
  for (std::uint32_t seed = 1000; seed < 1500; ++seed) {
    DecodingNet net = random_net(seed, 20, 8);
    const NodeId start = "n0";
    const Address window_base =
        std::uniform_int_distribution<Address>{0, 0xf}(pick) * 0x1000;
    const std::uint64_t window = 0x1000;

    Address first_bad = window_base + window;  // sentinel: none
    for (Address a = window_base; a < window_base + window; ++a) {
      WalkOutcome expected = oracle_walk(net, {start, a});
      Result<Name> got = resolve(net, {start, a});
      if (expected.kind == WalkOutcome::Kind::accepted) {
        require(got.ok() && got.value() == expected.name,
                "resolve equals the walker at " + hex(a));
      } else {
        require(!got.ok(), "resolve fails where the walker fails at " + hex(a));
        require(got.error().code == (expected.kind == WalkOutcome::Kind::loop
                                         ? Errc::loop_detected
                                         : Errc::undecodable),
                "failure kind matches the walker at " + hex(a));
        if (first_bad == window_base + window) first_bad = a;
      }
    }

    auto ranges = resolve_range(net, {start, window_base}, window);
    if (first_bad == window_base + window) {
      require(ranges.ok(), "resolve_range succeeds when every address does");
      std::uint64_t off = 0;
      for (const auto& r : ranges.value()) {
        for (Address d = 0; d < r.size; ++d) {
          WalkOutcome expected =
              oracle_walk(net, {start, window_base + off + d});
          require(expected.kind == WalkOutcome::Kind::accepted &&
                      expected.name == Name{r.base.node, r.base.addr + d},
                  "range chunk position matches the walker");
        }
        off += r.size;
      }
      require(off == window, "chunks cover the whole range");
    } else {
      require(!ranges.ok(), "resolve_range fails when an address fails");
      require(ranges.error().message.find(hex(first_bad)) != std::string::npos,
              "resolve_range reports the first failing address " +
                  hex(first_bad));
      if (first_bad > window_base) {
        auto prefix = resolve_range(net, {start, window_base},
                                    first_bad - window_base);
        require(prefix.ok(), "the prefix before the failure resolves");
      }
    }
  }
}

// --------------------------------------------------------------- AC5

struct FuzzEnv {
  MonitorState st;
  std::mt19937 rng;
  int next_id = 0;

  explicit FuzzEnv(std::uint32_t seed) : rng(seed) {
    auto [net, conf] = load_fixture("xeon_phi.dsl");
    st = must(
        init_state(net, conf, {"s0", "s1", "s2"},
                   {{"root0", {"dram", 0x0}, 0x100000},
                    {"root1", {"gddr", 0x0}, 0x100000}},
                   {{"s0", "root0", {plain(Right::grant), meta(Right::grant)}},
                    {"s0", "root1", {plain(Right::grant)}},
                    {"s0", "iommu", {plain(Right::map)}},
                    {"s1", "smpt", {plain(Right::map)}},
                    {"s1", "root1", {meta(Right::access)}}}),
        "fuzz initial state");
  }

  std::uint64_t rnd(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>{lo, hi}(rng);
  }

  template <typename C>
  std::string pick_key(const C& container, const std::string& fallback) {
    if (container.empty()) return fallback;
    auto it = container.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(rnd(0, container.size() - 1)));
    if constexpr (requires { it->first; }) {
      return it->first;
    } else {
      return *it;
    }
  }

  std::string fresh(const char* prefix) {
    return std::string{prefix} + std::to_string(next_id++);
  }

  Result<MonitorState> random_op() {
    SubjectId s = pick_key(st.subjects, "s0");
    switch (rnd(0, 9)) {
      case 0:
      case 1: {  // retype
        ObjectId parent = pick_key(st.objects, "root0");
        ObjectType t = static_cast<ObjectType>(rnd(0, 2));
        std::uint64_t offset = rnd(0, 0x110) * 0x1000;
        std::uint64_t size = rnd(1, 4) * 0x1000;
        return retype(st, s, parent, t, offset, size, fresh("o"));
      }
      case 2: {  // derive
        ObjectId t = pick_key(st.objects, "root0");
        return derive_address_space(st, s, t, 0x1000, fresh("as"));
      }
      case 3:
      case 4: {  // map
        AddressSpaceId a = pick_key(st.aspaces, "iommu");
        ObjectId o = pick_key(st.objects, "root0");
        AddressRange dst{rnd(0, 0x40) * 0x1000, rnd(1, 2) * 0x1000};
        if (rnd(0, 9) == 0) dst.base += 0x10;  // occasional misalignment
        return map(st, s, a, dst, o, rnd(0, 1) * 0x1000, fresh("m"));
      }
      case 5: {  // unmap
        std::vector<MappingId> mids;
        for (const auto& [_, space] : st.aspaces) {
          for (const auto& [mid, __] : space.mappings) mids.push_back(mid);
        }
        if (mids.empty()) return revoke(st, s, "nothing");
        return unmap(st, s, mids[rnd(0, mids.size() - 1)]);
      }
      case 6: {  // copy
        SubjectId to = pick_key(st.subjects, "s1");
        ObjectId o = pick_key(st.objects, "root0");
        Authority a{static_cast<Right>(rnd(0, 2)), rnd(0, 1) == 1};
        return copy(st, s, to, o, a);
      }
      case 7: {  // revoke
        ObjectId o = pick_key(st.objects, "root0");
        return revoke(st, s, o);
      }
      case 8: {  // modify_map
        AddressSpaceId a = pick_key(st.aspaces, "iommu");
        std::vector<MapReplacement> reps;
        for (std::uint64_t i = 0, n = rnd(0, 2); i < n; ++i) {
          reps.push_back({{rnd(0, 0x40) * 0x1000, 0x1000},
                          pick_key(st.objects, "root0"), 0, fresh("m")});
        }
        return modify_map(st, s, a, reps);
      }
      default: {  // acm churn
        ObjectId o = pick_key(st.objects, "root0");
        AuthoritySet rights;
        if (rnd(0, 1)) rights.insert(plain(static_cast<Right>(rnd(0, 2))));
        if (rnd(0, 2) == 0) rights.insert(meta(static_cast<Right>(rnd(0, 2))));
        return set_acm_entry(st, pick_key(st.subjects, "s0"), o, rights);
      }
    }
  }
};

void dynamic_security() {
  int accepted = 0, rejected = 0;
  for (std::uint32_t episode = 0; episode < 20; ++episode) {
    FuzzEnv env{9000 + episode};
    require(check_static_security(env.st).empty(), "initial state is secure");
    for (int i = 0; i < 500; ++i) {
      MonitorState snapshot = env.st;
      Result<MonitorState> r = env.random_op();
      if (r.ok()) {
        ++accepted;
        env.st = r.take();
        std::vector<Violation> report = check_static_security(env.st);
        if (!report.empty()) {
          throw Failure{"accepted op left a violation: " +
                        to_string(report.front())};
        }
      } else {
        ++rejected;
        require(env.st == snapshot, "rejected op left the state unchanged");
      }
    }
  }
  require(accepted + rejected == 10000, "ran 10^4 operations");
  require(accepted > 1000 && rejected > 1000,
          "the mix exercises both outcomes (accepted " +
              std::to_string(accepted) + ", rejected " +
              std::to_string(rejected) + ")");
}

// --------------------------------------------------------------- AC6

std::optional<std::size_t> brute_min_config(const FlatGraph& g,
                                            const NodeId& src,
                                            const NodeId& dst) {
  std::optional<std::size_t> best;
  std::set<NodeId> on_path{src};
  std::function<void(const NodeId&, std::size_t)> dfs = [&](const NodeId& v,
                                                            std::size_t cost) {
    if (v == dst) {
      if (!best || cost < *best) best = cost;
      return;
    }
    for (const auto& e : g.edges(v)) {
      if (on_path.count(e.to)) continue;
      on_path.insert(e.to);
      dfs(e.to, cost + (e.needs_config ? 1 : 0));
      on_path.erase(e.to);
    }
  };
  dfs(src, 0);
  return best;
}

void plan_minimality() {
  // exhaustive comparison on small random graphs
  for (std::uint32_t seed = 2000; seed < 2120; ++seed) {
    DecodingNet net = random_net(seed, 12, 4);
    ConfigSpaces conf;
    std::vector<NodeId> ids = net.node_ids();
    for (std::size_t i = 0; i < ids.size(); i += 3) {
      conf[ids[i]] = {0x1000, {ids[(i + 2) % ids.size()]}};
    }
    FlatGraph g = FlatGraph::flatten(net, conf);
    for (const auto& src : g.vertices()) {
      for (const auto& dst : g.vertices()) {
        if (src == dst) continue;
        auto expected = brute_min_config(g, src, dst);
        Result<ConfigPlan> plan = config_nodes(g, net, conf, src, dst);
        if (expected) {
          require(plan.ok() && plan.value().steps.size() == *expected,
                  "plan length equals the exhaustive minimum (" + src +
                      " -> " + dst + ")");
        } else {
          require(!plan.ok() && plan.error().code == Errc::unreachable,
                  "unreachable pairs report unreachable");
        }
      }
    }
  }

  // the offload fixture plans exactly [iommu, smpt]
  auto [net, conf] = load_fixture("xeon_phi.dsl");
  FlatGraph g = FlatGraph::flatten(net, conf);
  ConfigPlan plan =
      must(config_nodes(g, net, conf, "dma", "gddr"), "offload plan");
  require(plan.steps.size() == 2 && plan.steps[0].aspace == "iommu" &&
              plan.steps[1].aspace == "smpt",
          "offload plan is [iommu, smpt]");

  // soundness: executing the plan through the monitor makes the
  // destination resolvable from the source
  MonitorState st = must(
      init_state(net, conf, {"driver"}, {{"root", {"gddr", 0x0}, 0x10000}},
                 {{"driver", "root", {plain(Right::grant)}},
                  {"driver", "iommu", {plain(Right::map)}},
                  {"driver", "smpt", {plain(Right::map)}}}),
      "offload initial state");
  st = must(retype(st, "driver", "root", ObjectType::frame, 0x0, 0x1000, "buf"),
            "offload frame");
  for (auto it = plan.steps.rbegin(); it != plan.steps.rend(); ++it) {
    st = must(map(st, "driver", it->aspace, it->dst, "buf", 0x0,
                  "m_" + it->aspace),
              "configure " + it->aspace);
  }
  auto reached = resolve_range_filtered(project(st),
                                        {"dma", plan.steps.front().dst.base},
                                        0x1000, NodeId{"gddr"});
  require(reached.ok() && reached.value().size() == 1 &&
              reached.value()[0] == ResolvedRange{{"gddr", 0x0}, 0x1000},
          "executing the plan makes gddr resolvable from dma");
}

// --------------------------------------------------------------- AC7

// Grows a randomized derivation forest of guaranteed-valid operations:
// a fan of RAM slices, frames and translation structures underneath,
// derived spaces, and frames mapped into them.
void grow_forest(FuzzEnv& env, std::size_t cap) {
  std::vector<ObjectId> rams;
  for (int i = 0; i < 16; ++i) {
    ObjectId id = env.fresh("ram");
    env.st = must(retype(env.st, "s0", "root0", ObjectType::ram,
                         static_cast<std::uint64_t>(i) * 0x10000, 0x10000, id),
                  "forest: slice");
    rams.push_back(id);
  }
  std::vector<ObjectId> frames;
  std::vector<AddressSpaceId> spaces;
  for (const auto& ram : rams) {
    std::uint64_t off = 0;
    std::uint64_t children = env.rnd(2, 10);
    for (std::uint64_t j = 0;
         j < children && off + 0x1000 <= 0x10000 && env.st.mdb.size() < cap;
         ++j) {
      if (env.rnd(0, 9) < 5) {
        ObjectId f = env.fresh("leaf_f");
        env.st = must(
            retype(env.st, "s0", ram, ObjectType::frame, off, 0x1000, f),
            "forest: frame");
        frames.push_back(f);
      } else {
        ObjectId t = env.fresh("leaf_t");
        env.st = must(
            retype(env.st, "s0", ram, ObjectType::tstructure, off, 0x1000, t),
            "forest: tstructure");
        AddressSpaceId as = env.fresh("leaf_as");
        env.st = must(derive_address_space(env.st, "s0", t, 0x1000, as),
                      "forest: derive");
        spaces.push_back(as);
      }
      off += 0x1000 * env.rnd(1, 2);
    }
  }
  std::uint64_t granule = 0;
  for (const auto& f : frames) {
    if (spaces.empty() || env.st.mdb.size() >= cap) break;
    if (env.rnd(0, 2) == 0) continue;
    const AddressSpaceId& as = spaces[env.rnd(0, spaces.size() - 1)];
    env.st = must(map(env.st, "s0", as, {granule++ * 0x1000, 0x1000}, f, 0,
                      env.fresh("leaf_m")),
                  "forest: map");
  }
}

void revoke_completeness() {
  for (std::uint32_t episode = 0; episode < 40; ++episode) {
    FuzzEnv env{5000 + episode};
    grow_forest(env, 200);
    require(env.st.mdb.size() >= 100 && env.st.mdb.size() <= 200,
            "forest size in range, got " + std::to_string(env.st.mdb.size()));
    require(check_static_security(env.st).empty(), "grown state is secure");

    for (int round = 0; round < 3; ++round) {
      ObjectId victim = env.pick_key(env.st.objects, "root0");
      std::vector<MdbKey> doomed =
          env.st.mdb.descendants(object_key(victim));
      MonitorState after =
          must(revoke(env.st, "s0", victim), "owner revoke succeeds");

      std::set<std::string> dead;
      dead.insert(victim);  // matrix entries for the victim itself
      for (const auto& k : doomed) dead.insert(k.id);
      for (const auto& k : doomed) {
        require(!after.mdb.contains(k), "descendant gone from the database");
        if (k.kind == MdbKey::Kind::object) {
          require(after.objects.count(k.id) == 0, "object deleted");
        } else if (k.kind == MdbKey::Kind::space) {
          require(after.aspaces.count(k.id) == 0, "space deleted");
        }
      }
      for (const auto& [asid, space] : after.aspaces) {
        for (const auto& [mid, rec] : space.mappings) {
          require(dead.count(rec.target) == 0,
                  "no mapping targets a deleted object");
          require(dead.count(mid) == 0, "no deleted mapping survives");
        }
      }
      for (const auto& [key, rights] : after.acm.entries()) {
        require(dead.count(key.second) == 0,
                "no matrix entry references a deleted entity or the victim");
      }
      require(well_formed(project(after)).empty(),
              "projection stays well formed after revoke");
      require(check_static_security(after).empty(),
              "state stays secure after revoke");
      env.st = std::move(after);
    }
  }
}

// --------------------------------------------------------------- AC8

void codegen_agreement() {
  for (const char* name :
       {"uniform.dsl", "swapped.dsl", "private.dsl", "private_swapped.dsl",
        "xeon_phi.dsl", "mapping_platform.dsl"}) {
    auto [net, conf] = load_fixture(name);
    for (const auto& id : net.node_ids()) {
      dsl::TranslationTable table =
          must(dsl::emit_translation_table(net, id), "table for " + id);
      for (const auto& e : table.entries) {
        for (Address a = e.local.base; a < e.local.end(); ++a) {
          Result<Name> r = resolve(net, {id, a});
          require(r.ok() && r.value().node == e.canonical.node &&
                      r.value().addr == e.canonical.addr + (a - e.local.base),
                  std::string{name} + ": table agrees with resolve at " + id +
                      ":" + hex(a));
        }
      }
      for (const auto& gap : table.gaps) {
        for (Address a = gap.base; a < gap.end(); ++a) {
          require(!resolve(net, {id, a}).ok(),
                  std::string{name} + ": gap does not resolve at " + id + ":" +
                      hex(a));
        }
      }
    }
    std::string facts = emit_facts(net, conf);
    auto back = must(parse_facts(facts), "facts re-import");
    require(back.first == net && back.second == conf,
            std::string{name} + ": facts round-trip to an identical net");
  }
}

// --------------------------------------------------------------- AC9

void query_latency() {
  // a 50-vertex flattened graph: chains of configurable spaces over a
  // row of memory nodes
  std::vector<Node> nodes;
  ConfigSpaces conf;
  const int kMem = 25, kConf = 24;
  for (int i = 0; i < kMem; ++i) {
    Node n;
    n.id = "mem" + std::to_string(i);
    n.accept.push_back({0, 0x10000});
    nodes.push_back(n);
  }
  for (int i = 0; i < kConf; ++i) {
    Node n;
    n.id = "cfg" + std::to_string(i);
    nodes.push_back(n);
    std::vector<NodeId> targets{"mem" + std::to_string(i % kMem)};
    if (i + 1 < kConf) targets.push_back("cfg" + std::to_string(i + 1));
    conf["cfg" + std::to_string(i)] = {0x1000, targets};
  }
  Node start;
  start.id = "core";
  start.overlay = "cfg0";
  nodes.push_back(start);
  DecodingNet net =
      must(DecodingNet::build(std::move(nodes)), "latency net builds");
  FlatGraph g = FlatGraph::flatten(net, conf);
  require(g.vertices().size() == 50, "graph has 50 vertices, got " +
                                         std::to_string(g.vertices().size()));

  auto t0 = std::chrono::steady_clock::now();
  ConfigPlan plan = must(
      config_nodes(g, net, conf, "core", "mem" + std::to_string(kMem - 2)),
      "latency plan");
  auto t1 = std::chrono::steady_clock::now();
  double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  require(!plan.steps.empty(), "plan crosses the configurable chain");
  require(ms < 100.0,
          "planning on 50 vertices takes " + std::to_string(ms) + " ms");
}

// ------------------------------------------------------------ runner

struct Criterion {
  int number;
  const char* label;
  std::function<void()> run;
  double budget_s;  // 0: no wall-clock bound
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "topology suite: four reference platforms, exhaustive windows",
       topology_suite, 10.0},
      {2, "mapping trace: validation, prefixes, right-removal",
       mapping_trace_criterion, 0},
      {3, "bug corpus: all rejected, rejections vanish without guards",
       bug_corpus, 0},
      {4, "oracle equivalence: resolve vs single-step walker, 500 nets",
       oracle_equivalence, 60.0},
      {5, "dynamic security: 10^4 fuzzed ops preserve the invariants",
       dynamic_security, 120.0},
      {6, "plan minimality and soundness, incl. the offload fixture",
       plan_minimality, 0},
      {7, "revoke completeness on randomized derivation forests",
       revoke_completeness, 0},
      {8, "codegen agreement: tables vs resolve, facts round-trip",
       codegen_agreement, 0},
      {9, "query latency: 50-vertex plan under 100 ms", query_latency, 0},
  };

  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.number != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run();
      double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      if (c.budget_s > 0 && secs > c.budget_s) {
        throw Failure{"exceeded the " + std::to_string(c.budget_s) +
                      " s budget (" + std::to_string(secs) + " s)"};
      }
      std::printf("AC%d PASS  %s (%.2fs)\n", c.number, c.label, secs);
    } catch (const Failure& f) {
      ++failures;
      std::printf("AC%d FAIL  %s: %s\n", c.number, c.label, f.what.c_str());
    }
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
