#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "classify.hpp"
#include "ideals.hpp"
#include "matroid.hpp"
#include "rootsystem.hpp"

namespace rootarr {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

inline json coords_json(const RootSystem& rs, const RootSet& s) { return coordinate_list(rs, s); }

inline json to_json(const RootSystem& rs, const BadIdealWitness& w) {
  json simple = json::array(), gens = json::array();
  for (int i : w.simple) simple.push_back(rs.format(i));
  for (int i : w.generators) gens.push_back(rs.format(i));
  return {{"kind", to_string(w.kind)}, {"simple", simple}, {"generators", gens}};
}

inline json to_json(const RootSystem& rs, const PartitionCertificate& c) {
  json blocks = json::array();
  for (std::size_t i = 0; i < c.blocks.size(); ++i) {
    json b{{"roots", coords_json(rs, c.blocks[i])}, {"size", c.blocks[i].count()}};
    const auto& m = c.meta[i];
    b["shape"] = to_string(m.shape);
    if (m.shape != BlockShape::Flat) b["alpha"] = rs.format(m.alpha);
    if (m.shape == BlockShape::GSet) {
      b["beta"] = rs.format(m.beta);
      b["a"] = m.a;
      b["b"] = m.b;
    }
    blocks.push_back(std::move(b));
  }
  return {{"kind", to_string(c.kind)}, {"blocks", blocks}};
}

inline json to_json(const RootSystem& rs, const ClassificationRecord& r) {
  auto opt_cert = [&](const std::optional<PartitionCertificate>& c) { return c ? to_json(rs, *c) : json(nullptr); };
  json j{{"ideal", r.ideal},
         {"size", r.size},
         {"chain_peelable", r.chain_peelable},
         {"supersolvable", r.supersolvable},
         {"line_closed", r.line_closed},
         {"bad_ideal_free", !r.bad_ideal.has_value()},
         {"bad_ideal", r.bad_ideal ? to_json(rs, *r.bad_ideal) : json(nullptr)},
         {"koszul", r.koszul},
         {"koszul_source", "equivalent to supersolvability for root ideal arrangements; not computed algebraically"},
         {"exponents", r.exponents ? json(*r.exponents) : json(nullptr)},
         {"certificates",
          {{"peeling", opt_cert(r.peeling)},
           {"supersolving", opt_cert(r.supersolving)},
           {"rootideal", opt_cert(r.rootideal)}}},
         {"non_flat_witness", r.non_flat_witness ? coords_json(rs, *r.non_flat_witness) : json(nullptr)},
         {"greedy_peeling_stuck", r.greedy_peeling_stuck}};
  return j;
}

// ---------------------------------------------------------------------------
// Survey
// ---------------------------------------------------------------------------

struct SurveyEntry {
  RootSet members;
  std::optional<ClassificationRecord> record;
  std::optional<std::string> violation;  // EquivalenceViolation message
};

struct SurveySummary {
  int chain_peelable = 0;
  int supersolvable = 0;
  int non_supersolvable = 0;
  int line_closed = 0;
  int bad_ideal = 0;
  int koszul = 0;
  int greedy_stuck = 0;
  int violations = 0;
};

struct SurveyReport {
  TypeLabel type;
  std::vector<SurveyEntry> entries;  // canonical order: size, then members lexicographically
  SurveySummary summary;
  bool equivalence_ok = true;
  double seconds = 0.0;

  [[nodiscard]] int ideal_count() const { return static_cast<int>(entries.size()); }
};

/// Classifies every ideal with `jobs` workers, each with its own memo tables
/// and a shared flat lattice. The record list does not depend on `jobs`.
inline SurveyReport run_survey(const RootSystem& rs, int jobs, std::shared_ptr<const FlatLattice> lattice = nullptr) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!lattice) lattice = std::make_shared<const FlatLattice>(rs);
  const auto ideals = enumerate_ideals(rs);
  std::vector<SurveyEntry> entries(ideals.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    Classifier cls(rs, lattice);
    for (std::size_t i = next++; i < ideals.size(); i = next++) {
      entries[i].members = ideals[i].members;
      try {
        entries[i].record = cls.classify(ideals[i].members);
      } catch (const EquivalenceViolation& e) {
        entries[i].violation = e.what();
      }
    }
  };
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::sort(entries.begin(), entries.end(), [](const SurveyEntry& a, const SurveyEntry& b) {
    const int ca = a.members.count(), cb = b.members.count();
    if (ca != cb) return ca < cb;
    return lex_less(a.members, b.members);
  });

  SurveyReport rep{rs.label(), std::move(entries), {}, true, 0.0};
  for (const auto& e : rep.entries) {
    if (e.violation) {
      ++rep.summary.violations;
      rep.equivalence_ok = false;
      continue;
    }
    const auto& r = *e.record;
    rep.summary.chain_peelable += r.chain_peelable;
    rep.summary.supersolvable += r.supersolvable;
    rep.summary.non_supersolvable += !r.supersolvable;
    rep.summary.line_closed += r.line_closed;
    rep.summary.bad_ideal += r.bad_ideal.has_value();
    rep.summary.koszul += r.koszul;
    rep.summary.greedy_stuck += r.greedy_peeling_stuck;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline json to_json(const SurveySummary& s) {
  return {{"chain_peelable", s.chain_peelable}, {"supersolvable", s.supersolvable},
          {"non_supersolvable", s.non_supersolvable}, {"line_closed", s.line_closed},
          {"bad_ideal", s.bad_ideal}, {"koszul", s.koszul},
          {"greedy_peeling_stuck", s.greedy_stuck}, {"equivalence_violations", s.violations}};
}

inline json to_json(const RootSystem& rs, const SurveyReport& rep) {
  json records = json::array();
  for (const auto& e : rep.entries) {
    if (e.record) {
      records.push_back(to_json(rs, *e.record));
    } else {
      records.push_back({{"ideal", coordinate_list(rs, e.members)},
                         {"size", e.members.count()},
                         {"violation", e.violation.value_or("")}});
    }
  }
  return {{"schema", kReportSchema},
          {"tool_version", kToolVersion},
          {"type", rep.type.str()},
          {"ideal_count", rep.ideal_count()},
          {"records", records},
          {"summary", to_json(rep.summary)},
          {"equivalence_ok", rep.equivalence_ok},
          {"timing", rep.seconds}};
}

/// Verdict columns only; list-valued cells are space separated.
inline std::string to_csv(const RootSystem& rs, const SurveyReport& rep) {
  std::ostringstream out;
  out << "ideal,size,chain_peelable,supersolvable,line_closed,bad_ideal_free,koszul,exponents,violation\n";
  auto join = [](const auto& xs) {
    std::string s;
    for (const auto& x : xs) {
      if (!s.empty()) s += ' ';
      if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::string>) s += x;
      else s += std::to_string(x);
    }
    return s;
  };
  for (const auto& e : rep.entries) {
    out << join(coordinate_list(rs, e.members)) << ',' << e.members.count() << ',';
    if (!e.record) {
      out << ",,,,,,1\n";
      continue;
    }
    const auto& r = *e.record;
    out << r.chain_peelable << ',' << r.supersolvable << ',' << r.line_closed << ',' << !r.bad_ideal.has_value() << ','
        << r.koszul << ',' << (r.exponents ? join(*r.exponents) : std::string()) << ",0\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Flat lattice persistence
// ---------------------------------------------------------------------------

inline json lattice_to_json(const FlatLattice& L) {
  json levels = json::array();
  for (const auto& lvl : L.levels()) {
    json l = json::array();
    for (const auto& f : lvl) l.push_back(f.elements());
    levels.push_back(std::move(l));
  }
  return {{"schema", kReportSchema}, {"type", L.system().label().str()}, {"levels", levels}};
}

inline FlatLattice lattice_from_json(const RootSystem& rs, const json& j) {
  if (j.at("schema").get<int>() != kReportSchema || j.at("type").get<std::string>() != rs.label().str())
    throw std::invalid_argument("flat cache: schema or type mismatch");
  std::vector<std::vector<RootSet>> levels;
  for (const auto& l : j.at("levels")) {
    std::vector<RootSet> lvl;
    for (const auto& f : l) {
      RootSet s;
      for (int i : f.get<std::vector<int>>()) {
        if (i < 0 || i >= rs.size()) throw std::invalid_argument("flat cache: root index out of range");
        s.set(i);
      }
      lvl.push_back(s);
    }
    levels.push_back(std::move(lvl));
  }
  return FlatLattice(rs, std::move(levels));
}

/// Flat lattice from `<dir>/flats-<type>.json` if present and valid; otherwise
/// built and written there. An empty dir disables persistence.
inline std::shared_ptr<const FlatLattice> load_or_build_lattice(const RootSystem& rs, const std::string& dir) {
  if (dir.empty()) return std::make_shared<const FlatLattice>(rs);
  const auto path = std::filesystem::path(dir) / ("flats-" + rs.label().str() + ".json");
  if (std::ifstream in(path); in) {
    try {
      return std::make_shared<const FlatLattice>(lattice_from_json(rs, json::parse(in)));
    } catch (const std::exception&) {
      // stale or corrupt; rebuild below
    }
  }
  auto L = std::make_shared<const FlatLattice>(rs);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (std::ofstream out(path); out) out << lattice_to_json(*L).dump();
  return L;
}

}  // namespace rootarr
