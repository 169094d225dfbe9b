#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "latkit/errors.hpp"
#include "latkit/gluing.hpp"
#include "latkit/json_io.hpp"
#include "latkit/scenarios.hpp"
#include "latkit/version.hpp"

namespace latkit::cli {

namespace {

struct Config {
  std::uint64_t group_limit = 10'000'000;
  std::uint64_t fqm_limit = 65'536;
  bool compact = false;
  bool quiet = false;
  bool no_timing = false;
  std::string output;

  std::string lattice_file;
  std::string basis_file;
  std::string sm_file;
  std::string sn_file;
  std::string poly_file;
  std::string action_file;
  int n = 0;
  int d = 0;
  int pole_order = 0;
  std::string scenario;
};

struct Result {
  Json body;
  int code = kOk;
};

FiniteQuadraticModule checked_module(const Lattice& l, const Config& cfg) {
  if (abs(l.det()) > Integer(static_cast<unsigned long>(cfg.fqm_limit)))
    throw ResourceLimit("discriminant group larger than --limit-fqm");
  return FiniteQuadraticModule::discriminant(l);
}

Json module_json(const Lattice& l, const Config& cfg) { return to_json(checked_module(l, cfg)); }

Result lattice_info(const Config& cfg) {
  const Lattice l = lattice_from_json(read_json_file(cfg.lattice_file));
  const auto [bp, bm] = signature(l);
  const auto parity = classify_parity_unimodular(l);
  Json out;
  out["name"] = l.name();
  out["rank"] = l.rank();
  out["signature"] = Json::array({bp, bm});
  out["parity"] = parity.even ? "even" : "odd";
  out["unimodular"] = parity.unimodular;
  out["det"] = to_json(l.det());
  out["discriminant"] = module_json(l, cfg);
  return {out};
}

Result lattice_aut(const Config& cfg) {
  const Lattice l = lattice_from_json(read_json_file(cfg.lattice_file));
  if (!is_definite(l)) throw InputError("lattice aut: lattice is indefinite");
  Json out = to_json(automorphism_group(l));
  out["name"] = l.name();
  return {out};
}

Result disc(const Config& cfg) {
  const Lattice l = lattice_from_json(read_json_file(cfg.lattice_file));
  return {module_json(l, cfg)};
}

GlueData load_glue(const Config& cfg) {
  const Lattice l = lattice_from_json(read_json_file(cfg.lattice_file));
  const IntMatrix basis = matrix_field_from_json(read_json_file(cfg.basis_file), "basis");
  if (basis.cols() != l.rank()) throw InputError("basis width does not match the lattice rank");
  if (rank(basis) != basis.rows()) throw InputError("basis rows are linearly dependent");
  if (abs(l.det()) != 1) throw InputError("glue: ambient lattice is not unimodular");
  const Sublattice m{l, basis};
  const Integer dm = abs(det_exact(m.induced_gram()));
  if (dm > Integer(static_cast<unsigned long>(cfg.fqm_limit))) throw ResourceLimit("A_M larger than --limit-fqm");
  return glue_data(l, m);
}

Result glue(const Config& cfg) {
  const GlueData g = load_glue(cfg);
  const auto& am = g.anti.am;
  const auto& an = g.anti.an;
  Json phi = Json::array();
  for (const auto& img : g.anti.phi.images) phi.push_back(an.index(img));
  Json out;
  out["m_gram"] = to_json(g.m_lattice.gram());
  out["n_basis"] = to_json(g.n().basis);
  out["n_gram"] = to_json(g.n_lattice.gram());
  out["a_m"] = to_json(am);
  out["a_n"] = to_json(an);
  out["glue_order"] = to_json(g.glue_order);
  out["phi"] = std::move(phi);
  out["glue_lifts"] = to_json(g.anti.glue_lifts);
  return {out};
}

Result extend(const Config& cfg) {
  const GlueData g = load_glue(cfg);
  const IntMatrix sm = matrix_field_from_json(read_json_file(cfg.sm_file), "matrix");
  const IntMatrix sn = matrix_field_from_json(read_json_file(cfg.sn_file), "matrix");
  if (sm.rows() != g.m_lattice.rank() || sm.cols() != g.m_lattice.rank())
    throw InputError("s_M has the wrong size");
  if (sn.rows() != g.n_lattice.rank() || sn.cols() != g.n_lattice.rank())
    throw InputError("s_N has the wrong size");
  try {
    Json out;
    out["matrix"] = to_json(extend_isometry(g, sm, sn));
    return {out};
  } catch (const GlueMismatch& e) {
    return {Json{{"error", e.what()}, {"compatible", false}}, kVerificationFailed};
  }
}

Result hodge(const Config& cfg) {
  const auto numbers = primitive_hodge_numbers(cfg.n, cfg.d);
  const auto m = middle_rank_and_signature(cfg.n, cfg.d, cfg.n % 2 == 0);
  Json h = Json::array();
  for (const auto& x : numbers) h.push_back(to_json(x));
  Json out;
  out["hodge"] = std::move(h);
  out["rank"] = to_json(m.rank);
  if (m.signature) {
    out["signature"] = Json::array({to_json(m.signature->first), to_json(m.signature->second)});
    out["primitive_signature"] =
        Json::array({to_json(m.primitive_signature->first), to_json(m.primitive_signature->second)});
  }
  return {out};
}

Result residues(const Config& cfg) {
  const Polynomial f = polynomial_from_json(read_json_file(cfg.poly_file));
  const DiagonalAction a = action_from_json(read_json_file(cfg.action_file));
  const auto ev = residue_eigenvalues(f, a, cfg.pole_order);
  Json basis = Json::array();
  for (const auto& m : ev.basis) basis.push_back(m);
  Json eig = Json::array();
  for (int e : ev.exponents) eig.push_back(Json{{"order", ev.order}, {"exponent", e}});
  Json out;
  out["order"] = ev.order;
  out["degree"] = ev.degree;
  out["scalar_exponent"] = ev.scalar_exponent;
  out["basis"] = std::move(basis);
  out["eigenvalues"] = std::move(eig);
  return {out};
}

Result verify(const Config& cfg) {
  const ScenarioOptions opts{cfg.group_limit, cfg.fqm_limit};
  std::vector<std::string> names;
  if (cfg.scenario == "all") {
    names = scenario_names();
  } else {
    const auto& known = scenario_names();
    if (std::find(known.begin(), known.end(), cfg.scenario) == known.end())
      throw InputError("unknown scenario '" + cfg.scenario + "'");
    names = {cfg.scenario};
  }
  bool pass = true;
  bool limited = false;
  Json reports = Json::array();
  for (const auto& name : names) {
    const ScenarioReport r = run_scenario(name, opts);
    pass = pass && r.pass();
    limited = limited || r.resource_limited;
    reports.push_back(r.to_json(!cfg.no_timing));
  }
  Result res;
  if (names.size() == 1) {
    res.body = reports.front();
  } else {
    res.body["reports"] = std::move(reports);
    res.body["pass"] = pass;
    res.body["version"] = kVersion;
  }
  res.code = limited ? kResourceLimit : (pass ? kOk : kVerificationFailed);
  return res;
}

void emit(const std::string& text, const Config& cfg, std::ostream& out) {
  if (!cfg.output.empty()) {
    const std::filesystem::path target(cfg.output);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary);
      if (!f) throw InputError("cannot write " + tmp.string());
      f << text;
      if (!f) throw InputError("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
  }
  if (!cfg.quiet) out << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Exact lattice, discriminant form and Jacobian ring toolkit", "latkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--limit-group-order", cfg.group_limit, "Largest group to enumerate element by element")
      ->check(CLI::PositiveNumber);
  app.add_option("--limit-fqm", cfg.fqm_limit, "Largest finite quadratic module to enumerate")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", cfg.compact, "Compact single-line JSON");
  app.add_flag("--quiet", cfg.quiet, "No output, exit code only");
  app.add_flag("--no-timing", cfg.no_timing, "Omit elapsed_ms from scenario reports");
  app.add_option("-o,--output", cfg.output, "Also write the result to this file");

  std::function<Result(const Config&)> action;

  auto* lattice = app.add_subcommand("lattice", "Lattice invariants");
  lattice->require_subcommand(1);
  lattice->fallthrough();
  auto* info = lattice->add_subcommand("info", "Rank, signature, parity, determinant, discriminant module");
  info->add_option("file", cfg.lattice_file, "Lattice JSON")->required()->check(CLI::ExistingFile);
  info->callback([&] { action = lattice_info; });
  auto* aut = lattice->add_subcommand("aut", "Automorphism group of a definite lattice");
  aut->add_option("file", cfg.lattice_file, "Lattice JSON")->required()->check(CLI::ExistingFile);
  aut->callback([&] { action = lattice_aut; });

  auto* d = app.add_subcommand("disc", "Discriminant module");
  d->add_option("file", cfg.lattice_file, "Lattice JSON")->required()->check(CLI::ExistingFile);
  d->callback([&] { action = disc; });

  auto* g = app.add_subcommand("glue", "Glue data of a primitive sublattice of a unimodular lattice");
  g->add_option("lattice", cfg.lattice_file, "Lattice JSON")->required()->check(CLI::ExistingFile);
  g->add_option("basis", cfg.basis_file, "Sublattice basis JSON")->required()->check(CLI::ExistingFile);
  g->callback([&] { action = glue; });

  auto* e = app.add_subcommand("extend", "Extend a compatible isometry pair to the ambient lattice");
  e->add_option("lattice", cfg.lattice_file, "Lattice JSON")->required()->check(CLI::ExistingFile);
  e->add_option("basis", cfg.basis_file, "Sublattice basis JSON")->required()->check(CLI::ExistingFile);
  e->add_option("s_m", cfg.sm_file, "Isometry of M (JSON)")->required()->check(CLI::ExistingFile);
  e->add_option("s_n", cfg.sn_file, "Isometry of N (JSON)")->required()->check(CLI::ExistingFile);
  e->callback([&] { action = extend; });

  auto* h = app.add_subcommand("hodge", "Primitive Hodge numbers, rank and signature");
  h->add_option("n", cfg.n, "Dimension")->required()->check(CLI::PositiveNumber);
  h->add_option("d", cfg.d, "Degree")->required()->check(CLI::Range(3, 1000));
  h->callback([&] { action = hodge; });

  auto* r = app.add_subcommand("residues", "Eigenvalues of a diagonal action on a residue basis");
  r->add_option("polynomial", cfg.poly_file, "Polynomial JSON")->required()->check(CLI::ExistingFile);
  r->add_option("action", cfg.action_file, "Action JSON")->required()->check(CLI::ExistingFile);
  r->add_option("a", cfg.pole_order, "Pole order")->required()->check(CLI::PositiveNumber);
  r->callback([&] { action = residues; });

  auto* v = app.add_subcommand("verify", "Run a named scenario or all of them");
  v->add_option("scenario", cfg.scenario, "Scenario name or 'all'")->required();
  v->callback([&] { action = verify; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    std::ostringstream o, eo;
    const int rc = app.exit(ex, o, eo);
    out << o.str();
    err << eo.str();
    return rc == 0 ? kOk : kInputError;
  }

  try {
    const Result res = action(cfg);
    std::string text = cfg.compact ? res.body.dump() : res.body.dump(2);
    text += '\n';
    emit(text, cfg, out);
    return res.code;
  } catch (const InputError& ex) {
    err << "input error: " << ex.what() << '\n';
    return kInputError;
  } catch (const ResourceLimit& ex) {
    err << "resource limit: " << ex.what() << '\n';
    return kResourceLimit;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kVerificationFailed;
  }
}

}  // namespace latkit::cli
