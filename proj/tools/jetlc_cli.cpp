#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "jetlc/commands.hpp"
#include "jetlc/serialize.hpp"
#include "jetlc/verify.hpp"

using namespace jetlc;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json read_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw UsageError(std::string("cannot read ") + what + " file '" + path + "'");
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const std::exception& e) {
    throw UsageError(std::string(what) + " file '" + path + "' is not valid JSON: " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const std::string& config_path, int dim, std::optional<std::uint64_t> seed, const std::string& out_flag) {
  SuiteConfig config;
  try {
    config = SuiteConfig::load(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (dim) {
    if (dim < 2 || dim > 4) {
      std::cerr << "error: --dim must be 2, 3 or 4\n";
      return kExitUsage;
    }
    config.dimensions = {dim};
  }
  if (seed) config.seed = *seed;
  std::filesystem::path out = !out_flag.empty() ? out_flag : !config.out.empty() ? config.out : "verify-report.json";

  const VerifyReport report = run_verify(config, [](const CheckRecord& r) {
    std::cout << (r.passed ? "[pass] " : "[FAIL] ") << r.suite
              << (r.dimension > 0 ? " n=" + std::to_string(r.dimension) : std::string()) << ": " << r.name << " ("
              << to_string(r.mode) << ", " << r.cases << " cases)\n"
              << std::flush;
    if (!r.passed) {
      std::cerr << "  " << r.detail << "\n";
      if (!r.witness.is_null()) std::cerr << "  witness: " << r.witness.dump() << "\n";
    }
  });
  std::filesystem::path md = out;
  md.replace_extension(".md");
  write_file(out, to_json(report).dump(2) + "\n");
  write_file(md, to_markdown(report));
  std::cout << (report.passed() ? "PASS" : "FAIL") << ": " << report.checks.size() - report.failures() << "/"
            << report.checks.size() << " checks passed; report written to " << out.string() << " and "
            << md.string() << "\n";
  return report.passed() ? kExitPass : kExitFail;
}

int cmd_eval(const std::string& form, const std::string& point_path, const std::string& vectors_path) {
  const auto out = eval_form(form, read_json_file(point_path, "point"), read_json_file(vectors_path, "vectors"));
  std::cout << out.dump(2) << "\n";
  return kExitPass;
}

int cmd_invariants(int n, const std::string& group, const std::string& space) {
  const auto result = invariants_command(n, group, space);
  std::cout << result.json.dump(2) << "\n";
  return result.ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification engine for the universal Levi-Civita connection on J^1 of metrics"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "Run every verification suite and write JSON and markdown reports");
  std::string config_path, out_path;
  int dim = 0;
  std::optional<std::uint64_t> seed;
  verify->add_option("--config", config_path, "Suite config (JSON)")->required();
  verify->add_option("--dim", dim, "Run only this dimension (2, 3 or 4)");
  verify->add_option("--seed", seed, "Override the config seed");
  verify->add_option("--out", out_path, "Report path (JSON); markdown goes next to it with .md");

  auto* eval = app.add_subcommand("eval", "Evaluate a form at a jet point on tangent vectors");
  std::string form, point_path, vectors_path;
  eval->add_option("form", form, "theta | vartheta | omega_hor | omega | curvature | p_k | euler_pf")->required();
  eval->add_option("--point", point_path, "Jet point (JSON)")->required();
  eval->add_option("--vectors", vectors_path, "Tangent vectors (JSON array)")->required();

  auto* inv = app.add_subcommand("invariants", "Compute invariant subspaces under O(n) or SO(n)");
  int inv_dim = 0;
  std::string group = "O", space = "E";
  inv->add_option("--dim", inv_dim, "Dimension n (2, 3 or 4)")->required();
  inv->add_option("--group", group, "O or SO");
  inv->add_option("--space", space, "E (default), V3 or V4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(config_path, dim, seed, out_path);
    if (*eval) return cmd_eval(form, point_path, vectors_path);
    if (*inv) return cmd_invariants(inv_dim, group, space);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
