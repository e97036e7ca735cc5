// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "bjlab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bjlab/error.hpp"

namespace bjlab
{

namespace
{

[[noreturn]] void schema(const std::string &path, const std::string &msg)
{
  throw Error(ErrorCode::Schema, "field '" + path + "': " + msg);
}

const Json &field(const Json &j, const std::string &key, const std::string &path)
{
  if (!j.is_object()) schema(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema(path + "." + key, "missing");
  return *it;
}

double number(const Json &j, const std::string &path)
{
  if (!j.is_number()) schema(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema(path, "must be finite");
  return v;
}

double number(const Json &j, const std::string &key, const std::string &path)
{
  return number(field(j, key, path), path + "." + key);
}

std::size_t index(const Json &j, const std::string &path)
{
  if (!j.is_number_integer() || j.get<long long>() < 1) schema(path, "expected a positive integer");
  return j.get<std::size_t>();
}

std::vector<double> numbers(const Json &j, const std::string &path)
{
  if (!j.is_array()) schema(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Eigen::MatrixXd matrix(const Json &j, const std::string &path)
{
  if (!j.is_array()) schema(path, "expected an array of rows");
  if (j.empty()) return Eigen::MatrixXd(0, 0);
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r)
  {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    const std::vector<double> row = numbers(j[r], rp);
    if (row.size() != cols) schema(rp, "row length differs from row 0");
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
  }
  return m;
}

Json matrix_json(const Eigen::MatrixXd &m)
{
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
  {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

// Library errors raised while building a value from valid JSON shapes are
// still schema problems of that field.
template <typename F>
auto guarded(const std::string &path, F &&f)
{
  try
  {
    return f();
  }
  catch (const Error &e)
  {
    if (e.code() == ErrorCode::Schema) throw;
    schema(path, e.what());
  }
}

void format_number(std::ostringstream &os, const Json &j)
{
  if (j.is_number_integer() || j.is_number_unsigned())
  {
    os << j.dump();
    return;
  }
  const double v = j.get<double>();
  if (!std::isfinite(v))
  {
    os << "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  os << s;
}

void dump_into(std::ostringstream &os, const Json &j)
{
  switch (j.type())
  {
  case Json::value_t::object:
  {
    os << '{';
    bool first = true;
    for (const auto &[k, v] : j.items())
    {
      if (!first) os << ',';
      first = false;
      os << Json(k).dump() << ':';
      dump_into(os, v);
    }
    os << '}';
    return;
  }
  case Json::value_t::array:
  {
    os << '[';
    for (std::size_t i = 0; i < j.size(); ++i)
    {
      if (i) os << ',';
      dump_into(os, j[i]);
    }
    os << ']';
    return;
  }
  case Json::value_t::number_float:
  case Json::value_t::number_integer:
  case Json::value_t::number_unsigned: format_number(os, j); return;
  default: os << j.dump();
  }
}

std::string csv_cell(const Json &j)
{
  std::string s;
  if (j.is_string())
    s = j.get<std::string>();
  else
    s = canonical_dump(j);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

}  // namespace

SequenceSpec sequence_from_json(const Json &j, const std::string &path)
{
  const Json &fam = field(j, "family", path);
  if (!fam.is_string()) schema(path + ".family", "expected a string");
  const std::string f = fam.get<std::string>();
  Family family;
  if (f == "constant")
    family = Constant{number(j, "c", path)};
  else if (f == "geometric")
    family = Geometric{number(j, "a", path), number(j, "r", path)};
  else if (f == "power")
    family = Power{number(j, "a", path), number(j, "b", path), number(j, "s", path)};
  else if (f == "periodic")
    family = Periodic{numbers(field(j, "pattern", path), path + ".pattern")};
  else
    schema(path + ".family", "unknown family '" + f + "'");

  std::vector<std::pair<std::size_t, double>> ov;
  if (const auto it = j.find("overrides"); it != j.end())
  {
    if (!it->is_array()) schema(path + ".overrides", "expected an array of [index, value] pairs");
    for (std::size_t i = 0; i < it->size(); ++i)
    {
      const std::string op = path + ".overrides[" + std::to_string(i) + "]";
      const Json &e = (*it)[i];
      if (!e.is_array() || e.size() != 2) schema(op, "expected [index, value]");
      ov.emplace_back(index(e[0], op + "[0]"), number(e[1], op + "[1]"));
    }
  }
  return guarded(path, [&] { return SequenceSpec(std::move(family), std::move(ov)); });
}

OperatorRep operator_from_json(const Json &j, const std::string &path)
{
  const Json &kind = field(j, "kind", path);
  if (!kind.is_string()) schema(path + ".kind", "expected a string");
  const std::string k = kind.get<std::string>();
  const double p = number(j, "p", path);
  if (k == "dense")
  {
    const double q = j.contains("q") ? number(j, "q", path) : p;
    Eigen::MatrixXd m = matrix(field(j, "matrix", path), path + ".matrix");
    if (m.size() == 0) schema(path + ".matrix", "must be nonempty");
    return guarded(path, [&] { return OperatorRep{make_dense(std::move(m), p, q)}; });
  }
  if (k == "structured")
  {
    Eigen::MatrixXd h = j.contains("head") ? matrix(j["head"], path + ".head") : Eigen::MatrixXd(0, 0);
    SequenceSpec tail = sequence_from_json(field(j, "tail", path), path + ".tail");
    return guarded(path, [&] { return OperatorRep{make_structured(std::move(h), std::move(tail), p)}; });
  }
  if (k == "coord_projection")
  {
    const Json &m = field(j, "mask", path);
    std::optional<std::size_t> n;
    if (j.contains("n")) n = index(j["n"], path + ".n");
    Mask mask;
    if (m.is_object() && m.contains("finite"))
    {
      const Json &f = m["finite"];
      if (!f.is_array()) schema(path + ".mask.finite", "expected an array of indices");
      FiniteMask fm;
      for (std::size_t i = 0; i < f.size(); ++i) fm.indices.insert(index(f[i], path + ".mask.finite[" + std::to_string(i) + "]"));
      mask = std::move(fm);
    }
    else if (m.is_object() && m.contains("tail_pattern"))
    {
      mask = sequence_from_json(m["tail_pattern"], path + ".mask.tail_pattern");
    }
    else
    {
      schema(path + ".mask", "expected {\"finite\": [...]} or {\"tail_pattern\": {...}}");
    }
    return guarded(path, [&] { return OperatorRep{make_coordinate_projection(std::move(mask), p, n)}; });
  }
  schema(path + ".kind", "unknown kind '" + k + "'");
}

LpVector vector_from_json(const Json &j, const std::string &path)
{
  const double p = number(j, "p", path);
  std::vector<double> c = numbers(field(j, "coords", path), path + ".coords");
  return guarded(path, [&] { return LpVector(std::move(c), p); });
}

Json read_json_file(const std::string &file)
{
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::Schema, "cannot read '" + file + "'");
  try
  {
    return Json::parse(in);
  }
  catch (const Json::parse_error &e)
  {
    throw Error(ErrorCode::Schema, "'" + file + "' is not valid JSON: " + e.what());
  }
}

Json to_json(const SequenceSpec &s)
{
  Json j;
  std::visit(
    [&](const auto &f)
    {
      using F = std::decay_t<decltype(f)>;
      if constexpr (std::is_same_v<F, Constant>)
        j = {{"family", "constant"}, {"c", f.c}};
      else if constexpr (std::is_same_v<F, Geometric>)
        j = {{"family", "geometric"}, {"a", f.a}, {"r", f.r}};
      else if constexpr (std::is_same_v<F, Power>)
        j = {{"family", "power"}, {"a", f.a}, {"b", f.b}, {"s", f.s}};
      else
        j = {{"family", "periodic"}, {"pattern", f.pattern}};
    },
    s.family());
  if (!s.overrides().empty())
  {
    Json ov = Json::array();
    for (const auto &[i, v] : s.overrides()) ov.push_back(Json::array({i, v}));
    j["overrides"] = ov;
  }
  return j;
}

Json to_json(const OperatorRep &op)
{
  if (const auto *d = std::get_if<DenseOp>(&op))
    return {{"kind", "dense"}, {"p", d->p}, {"q", d->q}, {"matrix", matrix_json(d->matrix)}};
  if (const auto *s = std::get_if<StructuredOp>(&op))
  {
    const auto seq = s->tail.as_sequence();
    if (!seq) throw Error(ErrorCode::UnsupportedCombination, "derived tails have no JSON form");
    return {{"kind", "structured"}, {"p", s->p}, {"head", matrix_json(s->head)}, {"tail", to_json(*seq)}};
  }
  const auto &pr = std::get<CoordProjection>(op);
  Json j = {{"kind", "coord_projection"}, {"p", pr.p}};
  if (const auto *f = std::get_if<FiniteMask>(&pr.mask))
    j["mask"] = {{"finite", f->indices}};
  else
    j["mask"] = {{"tail_pattern", to_json(std::get<SequenceSpec>(pr.mask))}};
  if (pr.ambient) j["n"] = *pr.ambient;
  return j;
}

Json to_json(const LpVector &x)
{
  return {{"p", x.p()}, {"coords", x.coords()}};
}

Json to_json(const NormCertificate &c)
{
  Json j = {{"value", c.value}, {"method", std::string(to_string(c.method))}, {"residual", c.residual}, {"converged", c.converged}};
  j["maximizer"] = c.maximizer ? Json(c.maximizer->coords()) : Json("not_attained");
  return j;
}

Json to_json(const EssentialNormReport &e)
{
  Json j = {{"value", e.value}, {"certificate", nullptr}};
  if (e.certificate)
  {
    const WeaklyNullSequence &w = *e.certificate;
    j["certificate"] = {{"offset", w.offset},           {"period", w.period},
                        {"residue", w.residue},         {"limit_abs", w.limit_abs},
                        {"sample_index", w.sample_index}, {"lower_bound", w.lower_bound},
                        {"adjoint_coincides", w.adjoint_coincides}};
  }
  return j;
}

Json to_json(const MTDescription &mt)
{
  Json pts = Json::array();
  for (const LpVector &x : mt.points) pts.push_back(x.coords());
  Json j = {{"kind", std::string(to_string(mt.kind))},
            {"certified", mt.certified},
            {"compact", mt.compact},
            {"infinite", mt.infinite},
            {"p", mt.p},
            {"points", pts},
            {"coord_indices", mt.coord_indices},
            {"head_is_subspace", mt.head_is_subspace}};
  const auto dim = mt.span_dimension();
  j["span_dimension"] = dim ? Json(*dim) : Json(nullptr);
  return j;
}

Json to_json(const OrthogonalityVerdict &v)
{
  return {{"orthogonal", v.orthogonal}, {"lambda_star", v.lambda_star}, {"min_norm", v.min_norm},
          {"tol_used", v.tol_used},     {"t_norm", v.t_norm}};
}

Json to_json(const WitnessReport &w)
{
  return {{"found", w.found},
          {"witness", w.witness ? Json(w.witness->coords()) : Json(nullptr)},
          {"inner_residual", w.inner_residual},
          {"samples_examined", w.samples_examined},
          {"exhaustive", w.exhaustive},
          {"note", w.note}};
}

Json to_json(const BSDecision &d)
{
  Json basis = Json::array();
  for (const LpVector &x : d.h0_basis) basis.push_back(x.coords());
  return {{"verdict", std::string(to_string(d.verdict))},
          {"justification", std::string(to_string(d.justification))},
          {"norm", d.norm},
          {"essential_norm", d.essential_norm},
          {"restricted_norm", d.restricted_norm ? Json(*d.restricted_norm) : Json(nullptr)},
          {"h0_basis", basis},
          {"mt", to_json(d.mt)},
          {"diagnostics", d.diagnostics},
          {"assumptions", d.assumptions}};
}

Json to_json(const SuiteReport &r)
{
  Json details = Json::array();
  for (const DetailRow &d : r.details)
  {
    details.push_back({{"case_id", d.case_id}, {"parameter", d.parameter}, {"measured", d.measured},
                       {"bound", d.bound},     {"ok", d.ok},               {"unknown", d.unknown},
                       {"note", d.note}});
  }
  return {{"suite", r.suite},   {"statement", r.statement},   {"assumptions", r.assumptions},
          {"seed", r.seed},     {"cases", r.cases},           {"violations", r.violations},
          {"unknowns", r.unknowns}, {"details", details}};
}

std::string canonical_dump(const Json &j)
{
  std::ostringstream os;
  dump_into(os, j);
  return os.str();
}

std::string to_csv(const Json &j)
{
  std::ostringstream os;
  if (j.contains("details") && j["details"].is_array())
  {
    os << "suite,seed,case_id,parameter,measured,bound,ok,unknown,note\n";
    for (const Json &d : j["details"])
    {
      os << csv_cell(j["suite"]) << ',' << csv_cell(j["seed"]) << ',' << csv_cell(d["case_id"]) << ','
         << csv_cell(d["parameter"]) << ',' << csv_cell(d["measured"]) << ',' << csv_cell(d["bound"]) << ','
         << csv_cell(d["ok"]) << ',' << csv_cell(d["unknown"]) << ',' << csv_cell(d["note"]) << '\n';
    }
    return os.str();
  }
  bool first = true;
  for (const auto &[k, v] : j.items())
  {
    os << (first ? "" : ",") << csv_cell(Json(k));
    first = false;
  }
  os << '\n';
  first = true;
  for (const auto &[k, v] : j.items())
  {
    os << (first ? "" : ",") << csv_cell(v);
    first = false;
  }
  os << '\n';
  return os.str();
}

}  // namespace bjlab
