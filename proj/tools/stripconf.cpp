#include "stripconf/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

using stripconf::cli::Format;
using stripconf::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"Exact homology of disk configuration spaces in a strip"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "table";
  std::string cache_dir;
  bool no_cache = false;
  bool no_timestamp = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--cache-dir", cache_dir, "Matrix cache directory (default $STRIPCONF_CACHE_DIR or ./cache)");
    sub->add_flag("--no-cache", no_cache, "Do not read or write the matrix cache");
    sub->add_option("--max-cells", config.max_cells, "Refuse complexes with more cells than this")->check(CLI::PositiveNumber);
    sub->add_flag("--no-timestamp", no_timestamp, "Omit the generated_at field from JSON");
  };
  auto opt = [](CLI::App* sub, const char* name, auto& target, const char* help) { sub->add_option(name, target, help); };

  auto* betti = app.add_subcommand("betti", "Betti numbers of cell(n, w)");
  opt(betti, "--n", config.n, "Number of disks");
  opt(betti, "--w", config.w, "Strip width");
  common(betti);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  opt(verify, "--n", config.n, "Number of disks");
  opt(verify, "--w", config.w, "Strip width");
  opt(verify, "--k", config.k, "Homological degree (generation scope)");
  verify->add_option("--scope", config.scope, "boundary, basis, relations, decomposition or generation")->required();
  opt(verify, "--max-labels", config.max_labels, "Largest label count for relation instances");
  common(verify);

  auto* reduce = app.add_subcommand("reduce", "Rewrite a combination of generator words into the basis");
  opt(reduce, "--w", config.w, "Strip width");
  reduce->add_option("--expr", config.expression, "Combination such as \"W(3)|W(2,1) - 1/2*W(1)|W(3,2)\"")->required();
  opt(reduce, "--act", config.act, "Permutation in cycle notation applied first, e.g. \"(1 3)(2 4)\"");
  opt(reduce, "--quotient", config.quotient, "Drop words with a bare wheel on at most this many disks");
  common(reduce);

  auto* stability = app.add_subcommand("stability", "Representation-stability parameters");
  opt(stability, "--w", config.w, "Strip width");
  opt(stability, "--k", config.k, "Homological degree (first order)");
  opt(stability, "--order", config.d, "Order d");
  opt(stability, "--i", config.i, "Index i (order d)");
  common(stability);

  auto* basis = app.add_subcommand("basis", "List a homology basis");
  opt(basis, "--n", config.n, "Number of disks");
  opt(basis, "--w", config.w, "Strip width");
  opt(basis, "--k", config.k, "Homological degree");
  basis->add_option("--style", config.style, "AM or AMW")->check(CLI::IsMember({"AM", "AMW"}));
  common(basis);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : stripconf::cli::usage_error;
  }

  config.command = app.get_subcommands().front()->get_name();
  config.format = format == "json" ? Format::json : Format::table;
  if (!cache_dir.empty()) config.cache_dir = cache_dir;
  config.use_cache = !no_cache;
  config.timestamp = !no_timestamp;

  auto result = stripconf::cli::run(config);
  std::cout << result.output;
  std::cerr << result.error;
  return result.exit_code;
}
