// Command-line front end. Every command prints a one-line header
// ("# hellyfix VERSION command key=value ...") followed by its report;
// the exit status is 0 iff every verdict in the report passes, and the
// first failing verdict is repeated on stderr.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hellyfix/hellyfix.hpp"

namespace {

using namespace hellyfix;

struct Envelope {
  std::ostream& out;
  bool timings = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::string first_failure;

  Envelope(std::ostream& o, bool t) : out(o), timings(t) {}

  void header(const std::string& command, const std::vector<std::pair<std::string, std::string>>& params) {
    out << "# hellyfix " << HELLYFIX_VERSION << ' ' << command;
    for (const auto& [k, v] : params)
      out << ' ' << k << '=' << v;
    out << '\n';
  }
  void verdict(bool ok, const std::string& what) {
    if (!ok && first_failure.empty())
      first_failure = what;
  }
  int finish() {
    if (timings)
      out << "# seconds "
          << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << '\n';
    if (!first_failure.empty()) {
      std::cerr << "hellyfix: " << first_failure << '\n';
      return 1;
    }
    return 0;
  }
};

std::string pair_list(const std::vector<std::pair<long, long>>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << '(' << v[i].first << ',' << v[i].second << ')';
  os << '}';
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ','))
    if (!cur.empty())
      out.push_back(cur);
  return out;
}

void report_verdict(Envelope& env, const std::string& source, const Verdict& v) {
  env.out << "source " << source << '\n' << v.report();
  env.verdict(v.verified, source + ": " + v.report().substr(0, v.report().find('\n')));
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for fixed-point criteria, duplication arithmetic and Helly-type nerves"};
  app.require_subcommand(1);
  app.fallthrough();
  bool timings = false;
  app.add_flag("--timings", timings, "append wall-clock seconds to the report");

  auto* t1 = app.add_subcommand("table1", "g_n(k) for n=3..17, k=2..16 with monotonicity failures circled");
  bool machine = false;
  t1->add_flag("--machine", machine, "one line per entry: g N K VALUE CIRCLED");

  auto* lc = app.add_subcommand("lemma-count", "brute-force the two g_n(k) comparison statements");
  long nmax = 200;
  lc->add_option("--nmax", nmax, "largest n")->check(CLI::Range(10L, 100000L));

  auto* am = app.add_subcommand("ample", "duplication-function inequalities of a family");
  std::string ample_family;
  long ample_param = 0;
  am->add_option("--family", ample_family, "braid, saut, mcg or column")->required();
  am->add_option("--param", ample_param, "strands, rank or genus")->required();

  auto* vf = app.add_subcommand("verify", "check a certificate file and/or a builtin certificate");
  std::string cert_file, builtin_ref;
  vf->add_option("certificate", cert_file, "certificate file");
  vf->add_option("--builtin", builtin_ref, "FAMILY:PARAM[:FLAG]");

  auto* bd = app.add_subcommand("bounds", "certified FixDim lower bound of a builtin family");
  std::string bounds_family, assume;
  int bounds_param = 0;
  bd->add_option("--family", bounds_family, "builtin family")->required();
  bd->add_option("--param", bounds_param, "family parameter")->required();
  bd->add_option("--assume", assume, "comma-separated assumption flags granted");

  auto* hf = app.add_subcommand("helly-fuzz", "random polytopes in Q^d against the nerve restrictions");
  int dim = 2, sets = 6;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  hf->add_option("--dim", dim, "ambient dimension")->check(CLI::Range(1, 3));
  hf->add_option("--sets", sets, "polytopes per trial")->check(CLI::Range(1, 8));
  hf->add_option("--trials", trials, "number of trials");
  hf->add_option("--seed", seed, "64-bit master seed");
  hf->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));

  auto* pc = app.add_subcommand("certificate", "print a builtin certificate");
  std::string print_ref;
  pc->add_option("ref", print_ref, "FAMILY:PARAM[:FLAG]")->required();

  auto* ls = app.add_subcommand("families", "list builtin certificate families");

  CLI11_PARSE(app, argc, argv);

  Envelope env(std::cout, timings);
  try {
    if (*t1) {
      env.header("table1", {{"machine", machine ? "1" : "0"}});
      auto t = table1();
      std::cout << (machine ? t.machine() : t.render());
    } else if (*lc) {
      env.header("lemma-count", {{"nmax", std::to_string(nmax)}});
      auto r = lemma_count_verify(nmax);
      std::cout << "part1 equalities " << pair_list(r.part1_equalities) << " violations "
                << r.part1_violations.size() << " verdict " << (r.part1_matches ? "ok" : "MISMATCH") << '\n';
      std::cout << "part2 equalities " << pair_list(r.part2_equalities) << " violations "
                << r.part2_violations.size() << " verdict " << (r.part2_matches ? "ok" : "MISMATCH") << '\n';
      env.verdict(r.part1_matches, "lemma-count part 1 mismatch");
      env.verdict(r.part2_matches, "lemma-count part 2 mismatch");
    } else if (*am) {
      env.header("ample", {{"family", ample_family}, {"param", std::to_string(ample_param)}});
      for (const auto& c : family_claims(parse_duplication_family(ample_family), ample_param)) {
        std::cout << c.str() << '\n';
        env.verdict(c.matches(), c.str());
      }
    } else if (*vf) {
      if (cert_file.empty() && builtin_ref.empty())
        throw std::invalid_argument("verify: give a certificate file, --builtin, or both");
      env.header("verify", {{"file", cert_file.empty() ? "-" : cert_file},
                            {"builtin", builtin_ref.empty() ? "-" : builtin_ref}});
      CheckCache cache;
      if (!cert_file.empty())
        report_verdict(env, cert_file, check_certificate(parse_certificate(read_file(cert_file)), &cache));
      if (!builtin_ref.empty())
        report_verdict(env, builtin_ref, check_certificate(builtin(parse_builtin_ref(builtin_ref)), &cache));
    } else if (*bd) {
      env.header("bounds", {{"family", bounds_family}, {"param", std::to_string(bounds_param)},
                            {"assume", assume.empty() ? "-" : assume}});
      auto granted = split_commas(assume);
      std::string flag;
      if (bounds_family == "saut")
        for (const auto& g : granted)
          if (g == "nielsen-elliptic" || g == "semisimple")
            flag = g;
      auto b = bounds(bounds_family, bounds_param, flag);
      std::cout << b.str();
      std::vector<std::string> missing;
      for (const auto& c : b.conditions)
        if (std::find(granted.begin(), granted.end(), c) == granted.end())
          missing.push_back(c);
      if (b.verified) {
        std::cout << "status "
                  << (b.conditions.empty() ? "unconditional"
                                           : missing.empty() ? "holds under the granted flags" : "conditional on");
        for (const auto& m : missing)
          std::cout << ' ' << m;
        std::cout << '\n';
      }
      env.verdict(b.verified, bounds_family + ":" + std::to_string(bounds_param) + " " + b.failure);
    } else if (*hf) {
      env.header("helly-fuzz", {{"dim", std::to_string(dim)},
                                {"sets", std::to_string(sets)},
                                {"trials", std::to_string(trials)},
                                {"seed", std::to_string(seed)}});
      auto s = helly_fuzz(dim, sets, trials, seed, jobs);
      for (const auto& f : s.failures)
        std::cout << f.serialize() << '\n';
      std::cout << "largest empty simplex histogram";
      for (std::size_t r = 0; r < s.empty_r_histogram.size(); ++r)
        std::cout << ' ' << r << ':' << s.empty_r_histogram[r];
      std::cout << '\n' << s.passed << '/' << s.trials << " pass\n";
      if (!s.failures.empty())
        env.verdict(false, "trial seed " + std::to_string(s.failures.front().seed) + " violates a nerve restriction");
    } else if (*pc) {
      std::cout << print_certificate(builtin(parse_builtin_ref(print_ref)));
    } else if (*ls) {
      for (const auto& f : builtin_families())
        std::cout << f.name << ' ' << f.min << ".." << f.max << ' ' << f.description << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "hellyfix: " << e.what() << '\n';
    return 2;
  }
  return env.finish();
}
