// ellseq: binary sequence families from cyclic elliptic curves over odd
// characteristic, with exact correlation / balance / linear-complexity
// measurement against the theoretical bounds.
//
// Exit codes: 0 ok, 1 property failure, 2 bad parameters, 3 search
// exhaustion, 4 bad input file.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ellseq/report.hpp"
#include "ellseq/selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitBadParameters = 2;
constexpr int kExitSearchExhausted = 3;
constexpr int kExitBadInputFile = 4;

std::uint64_t max_q_from_env() {
  const char* env = std::getenv("ELLSEQ_MAX_Q");
  if (!env) return ellseq::kDefaultMaxQ;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw std::invalid_argument("ELLSEQ_MAX_Q is not a valid integer");
  }
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << content;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ellseq::DumpFormatError("cannot open input file: " + path);
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return text;
}

struct CommonArgs {
  std::uint64_t p = 3;
  int n = 1;
  std::int64_t t = 0;
  int d = 2;
  std::string mode = "PAPER_FAITHFUL";
  std::string curve_override;
  std::string out;
  std::string format;
  bool include_zero_delay = true;
};

// Resolve the working curve: an explicit serialized curve wins over the
// deterministic search.
std::pair<ellseq::WeierstrassCurve, ellseq::GroupSummary> resolve_curve(
    const CommonArgs& args, std::uint64_t max_q, bool t_given) {
  using namespace ellseq;
  if (!args.curve_override.empty()) {
    WeierstrassCurve c = curve_from_string(args.curve_override, max_q);
    GroupSummary s = group_summary(c);
    if (t_given && s.trace != args.t)
      throw std::invalid_argument("--t does not match the supplied curve's trace");
    return {c, s};
  }
  return search_curve(args.p, args.n, args.t, max_q);
}

ellseq::SequenceFamily build_family(const CommonArgs& args, std::uint64_t max_q,
                                    bool t_given) {
  using namespace ellseq;
  auto [curve, summary] = resolve_curve(args, max_q, t_given);
  Place place = find_place(curve, args.d, max_q);
  return generate_family(curve, place, family_mode_from_string(args.mode));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ellseq;
  CLI::App app{"binary sequence families from cyclic elliptic function fields"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string in_path;
  std::string scope = "quick";

  CLI::App* cmd_search = app.add_subcommand("search", "find the first cyclic curve with trace t");
  cmd_search->add_option("--p", args.p, "odd prime characteristic")->required();
  cmd_search->add_option("--n", args.n, "extension degree of F_q over F_p")->required();
  cmd_search->add_option("--t", args.t, "trace: #E = q + 1 + t")->required();
  cmd_search->add_option("--out", args.out, "output path (default stdout)");

  CLI::App* cmd_generate = app.add_subcommand("generate", "emit a sequence family dump");
  cmd_generate->add_option("--p", args.p, "odd prime characteristic");
  cmd_generate->add_option("--n", args.n, "extension degree of F_q over F_p");
  auto* gen_t = cmd_generate->add_option("--t", args.t, "trace: #E = q + 1 + t");
  cmd_generate->add_option("--d", args.d, "place degree")->required();
  cmd_generate->add_option("--mode", args.mode, "PAPER_FAITHFUL or DEDUPED");
  cmd_generate->add_option("--curve", args.curve_override, "serialized curve override");
  cmd_generate->add_option("--out", args.out, "output path (default stdout)");

  CLI::App* cmd_analyze = app.add_subcommand("analyze", "measure a family against the bounds");
  cmd_analyze->add_option("--p", args.p, "odd prime characteristic");
  cmd_analyze->add_option("--n", args.n, "extension degree of F_q over F_p");
  auto* ana_t = cmd_analyze->add_option("--t", args.t, "trace: #E = q + 1 + t");
  auto* ana_d = cmd_analyze->add_option("--d", args.d, "place degree");
  cmd_analyze->add_option("--mode", args.mode, "PAPER_FAITHFUL or DEDUPED");
  cmd_analyze->add_option("--curve", args.curve_override, "serialized curve override");
  cmd_analyze->add_option("--in", in_path, "read a previously generated dump file");
  cmd_analyze->add_option("--include-zero-delay", args.include_zero_delay,
                          "include delay-0 cross-correlations in Cor(S) (default true)");
  cmd_analyze->add_option("--format", args.format, "json (default) or csv");
  cmd_analyze->add_option("--out", args.out, "output path (default stdout)");

  CLI::App* cmd_verify = app.add_subcommand("verify", "run the property suites");
  cmd_verify->add_option("--scope", scope, "quick (default) or full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitBadParameters;
  }

  try {
    const std::uint64_t max_q = max_q_from_env();

    if (cmd_search->parsed()) {
      if (!is_admissible_trace(args.p, args.n, args.t)) {
        std::cerr << "inadmissible trace t=" << args.t << " for q=" << args.p << "^" << args.n
                  << "\n";
        return kExitBadParameters;
      }
      auto [curve, summary] = search_curve(args.p, args.n, args.t, max_q);
      write_output(args.out, curve_summary_json(curve, summary).dump(2) + "\n");
      return kExitOk;
    }

    if (cmd_generate->parsed()) {
      if (args.curve_override.empty() && !static_cast<bool>(*gen_t)) {
        std::cerr << "generate needs --t (or a --curve override)\n";
        return kExitBadParameters;
      }
      if (args.curve_override.empty() && !is_admissible_trace(args.p, args.n, args.t)) {
        std::cerr << "inadmissible trace t=" << args.t << " for q=" << args.p << "^" << args.n
                  << "\n";
        return kExitBadParameters;
      }
      SequenceFamily fam = build_family(args, max_q, static_cast<bool>(*gen_t));
      write_output(args.out, dump_family(fam));
      return kExitOk;
    }

    if (cmd_analyze->parsed()) {
      AnalysisInput input;
      if (!in_path.empty()) {
        input = analysis_input_from_dump(parse_dump(read_file(in_path)));
      } else {
        if (args.curve_override.empty() && !static_cast<bool>(*ana_t)) {
          std::cerr << "analyze needs --in, or --t (or a --curve override)\n";
          return kExitBadParameters;
        }
        if (!static_cast<bool>(*ana_d)) {
          std::cerr << "analyze needs --d when generating a family\n";
          return kExitBadParameters;
        }
        if (args.curve_override.empty() && !is_admissible_trace(args.p, args.n, args.t)) {
          std::cerr << "inadmissible trace t=" << args.t << " for q=" << args.p << "^"
                    << args.n << "\n";
          return kExitBadParameters;
        }
        input = analysis_input_from_family(build_family(args, max_q, static_cast<bool>(*ana_t)));
      }
      AnalysisResult result = analyze(input, args.include_zero_delay);
      if (args.format == "csv")
        write_output(args.out, analysis_report_csv(input, result));
      else if (args.format.empty() || args.format == "json")
        write_output(args.out, analysis_report_json(input, result).dump(2) + "\n");
      else
        throw std::invalid_argument("unknown format: " + args.format);
      if (!result.all_checks_pass()) {
        std::cerr << "bound-satisfaction check failed\n";
        return kExitPropertyFailure;
      }
      return kExitOk;
    }

    if (cmd_verify->parsed()) {
      VerifyScope vs;
      if (scope == "quick" || scope.empty())
        vs = VerifyScope::Quick;
      else if (scope == "full")
        vs = VerifyScope::Full;
      else
        throw std::invalid_argument("unknown scope: " + scope);
      bool all = true;
      for (const PropertyResult& r : run_selftest(vs)) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
        all = all && r.pass;
      }
      return all ? kExitOk : kExitPropertyFailure;
    }
  } catch (const DumpFormatError& e) {
    std::cerr << e.what() << "\n";
    return kExitBadInputFile;
  } catch (const SearchExhaustedError& e) {
    std::cerr << e.what() << "\n";
    return kExitSearchExhausted;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitBadParameters;
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << "\n";
    return kExitBadParameters;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitPropertyFailure;
  }
  return kExitOk;
}
