#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fialg/documents.hpp"
#include "fialg/errors.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fialg::ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(report.c_str(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw fialg::ParseError("cannot write " + out_path);
  out << report;
}

struct CommonArgs {
  std::string poset_path;
  std::string deriv_path;
  std::string out_path;
  std::string ring_name = "intpoly";
  int n_override = 0;
  std::uint64_t seed = 0;
  int probes = 500;
  bool no_close = false;
};

fialg::PosetDocument load_poset(const CommonArgs& args) {
  std::optional<bool> close_override;
  if (args.no_close) close_override = false;
  return fialg::parse_poset_document(read_file(args.poset_path),
                                     close_override);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Incidence-algebra toolkit: classify edge classes of finite "
      "preorders, falsify derivation laws, decompose black-box maps, and "
      "decide when every admissible map splits as derivation plus central "
      "part."};
  app.require_subcommand(1);
  CommonArgs args;

  auto add_poset_arg = [&args](CLI::App* cmd) {
    cmd->add_option("poset", args.poset_path, "poset document (JSON)")
        ->required();
    cmd->add_flag("--no-close", args.no_close,
                  "require the input relation to already be closed");
  };
  auto add_deriv_arg = [&args](CLI::App* cmd) {
    cmd->add_option("derivation", args.deriv_path,
                    "derivation document (JSON)")
        ->required();
  };
  auto add_probe_args = [&args](CLI::App* cmd) {
    cmd->add_option("--seed", args.seed, "probe seed (default 0)");
    cmd->add_option("--probes", args.probes,
                    "probe tuple count (default 500)");
    cmd->add_option("--n", args.n_override,
                    "commutator arity override (defaults to the document)");
    cmd->add_option("--out", args.out_path, "write the report to this file");
  };

  CLI::App* validate = app.add_subcommand(
      "validate", "parse and close a poset document, report its shape");
  add_poset_arg(validate);
  validate->add_option("--out", args.out_path, "write the report here");

  CLI::App* components =
      app.add_subcommand("components", "list connected components");
  add_poset_arg(components);
  components->add_option("--out", args.out_path, "write the report here");

  CLI::App* classes =
      app.add_subcommand("classes", "list cycle classes of strict edges");
  add_poset_arg(classes);
  classes->add_option("--out", args.out_path, "write the report here");

  CLI::App* properness = app.add_subcommand(
      "properness",
      "decide whether every component hosts at most one edge class");
  add_poset_arg(properness);
  properness->add_option("--out", args.out_path, "write the report here");

  CLI::App* check = app.add_subcommand(
      "check", "sample the Lie-type derivation law on a derivation document");
  add_poset_arg(check);
  add_deriv_arg(check);
  add_probe_args(check);

  CLI::App* decompose = app.add_subcommand(
      "decompose",
      "extract corner, transitive, and classwise parts with the check log");
  add_poset_arg(decompose);
  add_deriv_arg(decompose);
  add_probe_args(decompose);

  CLI::App* witness = app.add_subcommand(
      "witness",
      "emit a map refuting properness when some component hosts two classes");
  add_poset_arg(witness);
  witness->add_option("--ring", args.ring_name,
                      "coefficient ring (default intpoly)");
  witness->add_option("--out", args.out_path, "write the report here");

  CLI::App* properize = app.add_subcommand(
      "properize", "rebuild a decomposable map as derivation plus central part");
  add_poset_arg(properize);
  add_deriv_arg(properize);
  add_probe_args(properize);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    fialg::PosetDocument poset = load_poset(args);

    if (validate->parsed()) {
      emit(fialg::render_validate_report(poset), args.out_path);
      return kExitPass;
    }
    if (components->parsed()) {
      emit(fialg::render_components_report(poset), args.out_path);
      return kExitPass;
    }
    if (classes->parsed()) {
      fialg::EdgeClassification cls(poset.carrier);
      emit(fialg::render_classes_report(poset, cls), args.out_path);
      return kExitPass;
    }
    if (properness->parsed()) {
      fialg::EdgeClassification cls(poset.carrier);
      fialg::PropernessVerdict verdict = fialg::properness_criterion(cls);
      emit(fialg::render_properness_report(poset, verdict), args.out_path);
      return verdict.proper_capable ? kExitPass : kExitRefuted;
    }
    if (witness->parsed()) {
      auto named = fialg::RingDescriptor::from_name(args.ring_name);
      if (!named) throw fialg::ParseError("unknown ring " + args.ring_name);
      fialg::AlgebraContext ctx =
          fialg::AlgebraContext::make(poset.carrier, *named);
      std::optional<fialg::MapSpec> map = fialg::emit_witness(ctx);
      emit(fialg::render_witness_report(poset, map), args.out_path);
      return map ? kExitRefuted : kExitPass;
    }

    fialg::DerivationDocument doc =
        fialg::parse_derivation_document(read_file(args.deriv_path), poset);
    const int n = args.n_override > 0 ? args.n_override : doc.n;
    fialg::ProbeBudget budget;
    budget.seed = args.seed;
    budget.tuples = args.probes;
    fialg::AlgebraContext ctx = doc.map.context();

    if (check->parsed()) {
      fialg::Verdict verdict = fialg::check_lie_n_derivation(
          doc.map.black_box(), ctx, n, budget);
      emit(fialg::render_check_report(poset, n, budget, verdict),
           args.out_path);
      return verdict.pass ? kExitPass : kExitRefuted;
    }
    if (decompose->parsed()) {
      fialg::DecompositionReport report =
          fialg::decompose(doc.map.black_box(), ctx, n, budget);
      emit(fialg::render_decomposition_report(poset, budget, report),
           args.out_path);
      return report.decomposable ? kExitPass : kExitRefuted;
    }
    if (properize->parsed()) {
      fialg::DecompositionReport report =
          fialg::decompose(doc.map.black_box(), ctx, n, budget);
      fialg::ProperizeOutcome outcome = fialg::properize(report, budget);
      emit(fialg::render_properize_report(poset, report, outcome),
           args.out_path);
      return outcome.proper ? kExitPass : kExitRefuted;
    }
  } catch (const fialg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
