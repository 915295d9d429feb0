// rootarr: root systems, root ideals and their arrangements from the command line.
//
// Exit codes: 0 ok, 1 failed property or equivalence violation, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "rootarr/rootarr.hpp"

namespace {

using namespace rootarr;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

std::string cache_dir() {
  const char* d = std::getenv("ROOTARR_CACHE_DIR");
  return d ? d : "";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string tok; std::getline(in, tok, sep);)
    if (!tok.empty()) out.push_back(tok);
  return out;
}

int cmd_show(const std::string& type, const std::string& format) {
  const RootSystem rs(TypeLabel::parse(type));
  const auto& P = rs.poset();
  std::vector<std::vector<int>> covers(static_cast<std::size_t>(rs.size()));
  for (auto [lo, hi] : P.covers) covers[static_cast<std::size_t>(lo)].push_back(hi);
  const int top = rs.size() - 1;

  if (format == "json") {
    json roots = json::array();
    for (int i = 0; i < rs.size(); ++i) {
      json up = json::array();
      for (int j : covers[static_cast<std::size_t>(i)]) up.push_back(rs.format(j));
      roots.push_back({{"index", i}, {"coordinates", rs.format(i)}, {"height", rs.height(i)}, {"covered_by", up}});
    }
    json out{{"schema", kReportSchema},       {"type", rs.label().str()},   {"rank", rs.rank()},
             {"cartan", rs.cartan()},         {"symmetrizer", rs.symmetrizer()},
             {"root_count", rs.size()},       {"top_root", rs.format(top)}, {"max_height", rs.height(top)},
             {"roots", roots}};
    std::cout << out.dump(2) << '\n';
    return kOk;
  }

  std::cout << "type " << rs.label().str() << "  rank " << rs.rank() << "  positive roots " << rs.size()
            << "  heights 1.." << rs.height(top) << "  top root " << rs.format(top) << '\n';
  std::cout << "cartan";
  for (const auto& row : rs.cartan()) {
    std::cout << "  [";
    for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "") << row[j];
    std::cout << ']';
  }
  std::cout << '\n';
  for (int h = 1; h <= rs.height(top); ++h) {
    std::cout << "height " << h << ':';
    for (int i = 0; i < rs.size(); ++i) {
      if (rs.height(i) != h) continue;
      std::cout << ' ' << rs.format(i);
      const auto& up = covers[static_cast<std::size_t>(i)];
      if (!up.empty()) {
        std::cout << " <";
        for (std::size_t k = 0; k < up.size(); ++k) std::cout << (k ? "," : "") << rs.format(up[k]);
        std::cout << '>';
      }
    }
    std::cout << '\n';
  }
  return kOk;
}

int cmd_classify(const std::string& type, const std::string& ideal_text, const std::string& format) {
  const RootSystem rs(TypeLabel::parse(type));
  const Ideal I = parse_ideal(rs, ideal_text);
  Classifier cls(rs, load_or_build_lattice(rs, cache_dir()));
  try {
    const auto rec = cls.classify(I.members);
    if (format == "csv") {
      SurveyReport one{rs.label(), {SurveyEntry{I.members, rec, std::nullopt}}, {}, true, 0.0};
      std::cout << to_csv(rs, one);
    } else {
      json j = to_json(rs, rec);
      j["type"] = rs.label().str();
      std::cout << j.dump(2) << '\n';
    }
  } catch (const EquivalenceViolation& e) {
    std::cerr << "equivalence violation: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

void print_summary(std::ostream& os, const SurveyReport& rep) {
  const auto& s = rep.summary;
  os << "type " << rep.type.str() << ": " << rep.ideal_count() << " ideals\n"
     << "  chain peelable     " << s.chain_peelable << '\n'
     << "  supersolvable      " << s.supersolvable << '\n'
     << "  not supersolvable  " << s.non_supersolvable << '\n'
     << "  line closed        " << s.line_closed << '\n'
     << "  contain bad ideal  " << s.bad_ideal << '\n'
     << "  koszul             " << s.koszul << '\n'
     << "  greedy stuck       " << s.greedy_stuck << '\n'
     << "  violations         " << s.violations << '\n'
     << "  equivalence        " << (rep.equivalence_ok ? "ok" : "VIOLATED") << '\n';
}

int cmd_survey(const std::string& type, int jobs, const std::string& out_path, const std::string& format, bool force,
               bool log_greedy) {
  const TypeLabel label = TypeLabel::parse(type);
  if (label.rank > 6 && !force) {
    std::cerr << "survey of " << label.str() << " refused without --force: rank above 6.\n"
              << "  cost: E7 has 4160 ideals and takes about 1.5 minutes on one core; E8 has far more\n"
              << "  ideals and 120 roots, expect hours and several GB of memory for the flat lattice.\n";
    return kUsage;
  }
  const RootSystem rs(label);
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto rep = run_survey(rs, jobs, load_or_build_lattice(rs, cache_dir()));

  const std::string body = format == "csv" ? to_csv(rs, rep) : to_json(rs, rep).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << body;
    print_summary(std::cerr, rep);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << '\n';
      return kUsage;
    }
    out << body;
    print_summary(std::cout, rep);
  }
  if (log_greedy) {
    for (const auto& e : rep.entries)
      if (e.record && e.record->greedy_peeling_stuck)
        std::cerr << "greedy-stuck " << rep.type.str() << " " << detail::set_text(rs, e.members) << '\n';
    std::cerr << "greedy-stuck count " << rep.summary.greedy_stuck << '\n';
  }
  for (const auto& e : rep.entries)
    if (e.violation) std::cerr << "violation " << detail::set_text(rs, e.members) << ": " << *e.violation << '\n';
  return rep.equivalence_ok ? kOk : kFailure;
}

int cmd_verify(std::vector<std::string> suites, std::vector<std::string> types) {
  if (suites.empty()) suites = suite_names();
  if (types.empty())
    types = {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"};
  for (const auto& s : suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw InputError("unknown suite '" + s + "'");
  std::vector<TypeLabel> labels;
  for (const auto& t : types) labels.push_back(TypeLabel::parse(t));

  bool all_ok = true;
  for (const auto& label : labels) {
    const RootSystem rs(label);
    Classifier cls(rs, load_or_build_lattice(rs, cache_dir()));
    for (const auto& s : suites) {
      const auto res = run_suite(s, rs, cls);
      all_ok = all_ok && res.ok();
      std::cout << (res.ok() ? "PASS " : "FAIL ") << res.suite << ' ' << res.type << " checked=" << res.checked << '\n';
      for (const auto& n : res.notes) std::cout << "  " << n << '\n';
      for (const auto& f : res.failures) std::cout << "  counterexample: " << f << '\n';
    }
  }
  return all_ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rootarr: root systems, root ideals and arrangement classification"};
  app.require_subcommand(1);

  std::string type, ideal, out_path, types_opt;
  std::string show_format, classify_format, survey_format;
  int jobs = 1;
  bool force = false, log_greedy = false;
  std::vector<std::string> suites;

  auto* show = app.add_subcommand("show", "list positive roots, heights and covers");
  show->add_option("--type", type, "root system type, e.g. D4")->required();
  show->add_option("--format", show_format, "text or json")->check(CLI::IsMember({"text", "json"}))->default_val("text");

  auto* classify = app.add_subcommand("classify", "classify the ideal generated by the given roots");
  classify->add_option("--type", type, "root system type")->required();
  classify->add_option("--ideal", ideal, "generators, e.g. 1110,1101,0111")->required();
  classify->add_option("--format", classify_format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->default_val("json");

  auto* survey = app.add_subcommand("survey", "classify every ideal of a type");
  survey->add_option("--type", type, "root system type")->required();
  survey->add_option("--jobs", jobs, "worker threads (0 = all cores)")->default_val(1)->check(CLI::NonNegativeNumber);
  survey->add_option("--out", out_path, "report file (default stdout)");
  survey->add_option("--format", survey_format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->default_val("json");
  survey->add_flag("--force", force, "allow rank 7 and 8 surveys");
  survey->add_flag("--log-greedy", log_greedy, "log ideals where greedy chain peeling gets stuck");

  auto* verify = app.add_subcommand("verify", "run exhaustive property suites");
  verify->add_option("--suite", suites, "suite name (repeatable or comma separated)")->delimiter(',');
  verify->add_option("--types", types_opt, "comma separated types");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*show) return cmd_show(type, show_format);
    if (*classify) return cmd_classify(type, ideal, classify_format);
    if (*survey) return cmd_survey(type, jobs, out_path, survey_format, force, log_greedy);
    if (*verify) return cmd_verify(suites, split(types_opt, ','));
  } catch (const EquivalenceViolation& e) {
    std::cerr << "equivalence violation: " << e.what() << '\n';
    return kFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
