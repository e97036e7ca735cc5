// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

// bjlab command line: norm, ess-norm, bj, bs, mt and replicate.
// Exit codes: 0 ok, 1 suite violations, 2 schema or usage error,
// 3 non-convergence (partial certificate still written), 4 other failures.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "bjlab/bsemrl.hpp"
#include "bjlab/error.hpp"
#include "bjlab/json_io.hpp"
#include "bjlab/suites.hpp"

using namespace bjlab;

namespace
{

struct RunConfig
{
  std::string command;
  std::string op, t, a;
  std::optional<double> p, q;
  double tol = kDefaultTol;
  std::uint64_t seed = 7;
  std::string suite;
  std::optional<std::size_t> n;
  std::string out;
  std::string format = "json";
};

OperatorRep load(const std::string &file, const RunConfig &c, const std::string &flag)
{
  if (file.empty()) throw Error(ErrorCode::Schema, "missing --" + flag);
  OperatorRep op = operator_from_json(read_json_file(file), flag);
  if (!c.p && !c.q) return op;
  if (auto *d = std::get_if<DenseOp>(&op)) return make_dense(d->matrix, c.p.value_or(d->p), c.q.value_or(d->q));
  if (c.q) throw Error(ErrorCode::InvalidParameters, "--q applies to dense operators only");
  if (auto *s = std::get_if<StructuredOp>(&op)) return make_structured(s->head, s->tail, *c.p);
  auto &pr = std::get<CoordProjection>(op);
  return make_coordinate_projection(pr.mask, *c.p, pr.ambient);
}

NormOptions norm_options(const RunConfig &c)
{
  NormOptions o;
  o.seed = c.seed;
  return o;
}

// Returns the report and the exit status it implies.
std::pair<Json, int> run(const RunConfig &c)
{
  const NormOptions opts = norm_options(c);
  Json j;
  int status = 0;
  if (c.command == "norm")
  {
    const NormCertificate cert = op_norm(load(c.op, c, "op"), opts);
    j = to_json(cert);
    if (!cert.converged) status = 3;
  }
  else if (c.command == "ess-norm")
  {
    j = to_json(essential_norm(load(c.op, c, "op")));
  }
  else if (c.command == "bj")
  {
    j = to_json(bj_orthogonal_op(load(c.t, c, "t"), load(c.a, c, "a"), c.tol, opts));
  }
  else if (c.command == "bs")
  {
    if (!c.op.empty())
      j = to_json(bs_decide(load(c.op, c, "op"), opts));
    else
      j = to_json(bs_witness_search(load(c.t, c, "t"), load(c.a, c, "a"), c.tol, opts));
  }
  else if (c.command == "mt")
  {
    j = to_json(norm_attainment_set(load(c.op, c, "op"), opts));
  }
  else
  {
    SuiteConfig sc;
    sc.seed = c.seed;
    sc.n = c.n;
    sc.tol = c.tol;
    if (c.p) sc.p_values = {*c.p};
    const SuiteReport r = run_suite(c.suite, sc);
    j = to_json(r);
    if (r.violations > 0) status = 1;
  }
  j["command"] = c.command;
  j["seed"] = c.seed;
  return {j, status};
}

void emit(const Json &j, const RunConfig &c)
{
  const std::string text = c.format == "csv" ? to_csv(j) : canonical_dump(j) + "\n";
  if (c.out.empty())
  {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::trunc);
  if (!f) throw Error(ErrorCode::InvalidParameters, "cannot write '" + c.out + "'");
  f << text;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Birkhoff-James orthogonality and Bhatia-Semrl property lab"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App *s)
  {
    s->add_option("--p", c.p, "Override the domain exponent (replicate: restrict the exponent set)");
    s->add_option("--q", c.q, "Override the codomain exponent of a dense operator");
    s->add_option("--tol", c.tol, "Relative orthogonality tolerance");
    s->add_option("--seed", c.seed, "Seed for random starts and generated cases");
    s->add_option("--out", c.out, "Output file (default stdout)");
    s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  CLI::App *norm = app.add_subcommand("norm", "Operator norm with certificate");
  CLI::App *ess = app.add_subcommand("ess-norm", "Essential norm with weakly null certificate");
  CLI::App *bj = app.add_subcommand("bj", "Birkhoff-James orthogonality T _|_B A");
  CLI::App *bs = app.add_subcommand("bs", "Bhatia-Semrl decision (--op) or witness search (--t, --a)");
  CLI::App *mt = app.add_subcommand("mt", "Norm attainment set");
  CLI::App *rep = app.add_subcommand("replicate", "Run a replication suite");
  for (CLI::App *s : {norm, ess, mt, bs}) s->add_option("--op", c.op, "Operator JSON file");
  for (CLI::App *s : {bj, bs})
  {
    s->add_option("--t", c.t, "Operator T (JSON file)");
    s->add_option("--a", c.a, "Operator A (JSON file)");
  }
  rep->add_option("--suite", c.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  rep->add_option("--n", c.n, "Dimension bound for mask suites, case count for random suites");
  for (CLI::App *s : {norm, ess, bj, bs, mt, rep}) common(s);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  c.command = app.get_subcommands().front()->get_name();

  try
  {
    const auto [j, status] = run(c);
    emit(j, c);
    return status;
  }
  catch (const Error &e)
  {
    std::cerr << "bjlab: " << e.what() << '\n';
    if (e.code() == ErrorCode::Schema) return 2;
    if (e.code() == ErrorCode::NonConvergence) return 3;
    return 4;
  }
}
