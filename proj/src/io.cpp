#include "qht/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qht/errors.hpp"

namespace qht::io {

namespace {

std::string at(std::string_view where, std::string_view field) {
  std::string s(where);
  s += '.';
  s += field;
  return s;
}

std::string at(std::string_view where, std::size_t index) {
  return std::string(where) + "[" + std::to_string(index) + "]";
}

const Json& require_field(const Json& j, std::string_view where, const char* name) {
  if (!j.is_object()) throw ValidationError(std::string(where) + ": expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw ValidationError(at(where, name) + ": missing field");
  return *it;
}

const Json& require_array(const Json& j, const std::string& where, std::size_t size) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array");
  if (j.size() != size) {
    throw ValidationError(where + ": expected " + std::to_string(size) + " entries, found " +
                          std::to_string(j.size()));
  }
  return j;
}

double require_number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ValidationError(where + ": expected a number");
  return j.get<double>();
}

Eigen::MatrixXd read_real_matrix(const Json& j, const std::string& where, Index dim) {
  require_array(j, where, static_cast<std::size_t>(dim));
  Eigen::MatrixXd out(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    const std::string row_where = at(where, static_cast<std::size_t>(r));
    const Json& row = require_array(j[static_cast<std::size_t>(r)], row_where, static_cast<std::size_t>(dim));
    for (Index c = 0; c < dim; ++c) {
      out(r, c) = require_number(row[static_cast<std::size_t>(c)], at(row_where, static_cast<std::size_t>(c)));
    }
  }
  return out;
}

Json real_rows(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

void dump_into(std::string& out, const Json& j) {
  switch (j.type()) {
    case Json::value_t::number_float:
      out += std::isfinite(j.get<double>()) ? format_double(j.get<double>()) : "null";
      return;
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        dump_into(out, v);
      }
      out += ']';
      return;
    }
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        dump_into(out, v);
      }
      out += '}';
      return;
    }
    default:
      out += j.dump();
  }
}

std::string csv_cell(const FieldValue& v) {
  if (const double* d = std::get_if<double>(&v)) return format_double(*d);
  if (const std::int64_t* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  const std::string& s = std::get<std::string>(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string json_cell(const FieldValue& v) {
  if (const double* d = std::get_if<double>(&v)) return std::isfinite(*d) ? format_double(*d) : "null";
  if (const std::int64_t* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return Json(std::get<std::string>(v)).dump();
}

}  // namespace

HermitianOperator hermitian_from_json(const Json& j, std::string_view where) {
  const Json& dim_field = require_field(j, where, "dim");
  if (!dim_field.is_number_integer() || dim_field.get<std::int64_t>() < 1) {
    throw ValidationError(at(where, "dim") + ": expected a positive integer");
  }
  const auto dim = static_cast<Index>(dim_field.get<std::int64_t>());
  const Eigen::MatrixXd re = read_real_matrix(require_field(j, where, "re"), at(where, "re"), dim);
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(dim, dim);
  if (j.contains("im")) im = read_real_matrix(j["im"], at(where, "im"), dim);
  Matrix m(dim, dim);
  m.real() = re;
  m.imag() = im;
  try {
    return HermitianOperator(std::move(m));
  } catch (const Error& e) {
    throw ValidationError(std::string(where) + ": " + e.what());
  }
}

DensityOperator density_from_json(const Json& j, std::string_view where) {
  HermitianOperator op = hermitian_from_json(j, where);
  try {
    return DensityOperator(std::move(op));
  } catch (const Error& e) {
    throw ValidationError(std::string(where) + ": " + e.what());
  }
}

Ensemble ensemble_from_json(const Json& j) {
  const Json& priors_json = require_field(j, "ensemble", "priors");
  const Json& states_json = require_field(j, "ensemble", "states");
  if (!priors_json.is_array()) throw ValidationError("ensemble.priors: expected an array");
  if (!states_json.is_array()) throw ValidationError("ensemble.states: expected an array");
  std::vector<double> priors;
  for (std::size_t i = 0; i < priors_json.size(); ++i) {
    priors.push_back(require_number(priors_json[i], at("priors", i)));
  }
  std::vector<DensityOperator> states;
  for (std::size_t i = 0; i < states_json.size(); ++i) {
    states.push_back(density_from_json(states_json[i], at("states", i)));
  }
  return Ensemble(std::move(priors), std::move(states));
}

CqCodebookInstance code_from_json(const Json& j) {
  const Json& m_json = require_field(j, "code", "M");
  if (!m_json.is_number_integer() || m_json.get<std::int64_t>() < 1) {
    throw ValidationError("code.M: expected a positive integer");
  }
  const auto m = static_cast<std::size_t>(m_json.get<std::int64_t>());
  const Json& outputs_json = require_array(require_field(j, "code", "outputs"), "code.outputs", m);
  std::vector<DensityOperator> outputs;
  for (std::size_t i = 0; i < m; ++i) outputs.push_back(density_from_json(outputs_json[i], at("outputs", i)));
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const Json& labels_json = require_array(j["labels"], "code.labels", m);
    for (std::size_t i = 0; i < m; ++i) {
      if (!labels_json[i].is_string()) throw ValidationError(at("labels", i) + ": expected a string");
      labels.push_back(labels_json[i].get<std::string>());
    }
  }
  return CqCodebookInstance(std::move(outputs), std::move(labels));
}

Json to_json(const HermitianOperator& op) {
  return Json{{"dim", op.dim()}, {"re", real_rows(op.matrix().real())}, {"im", real_rows(op.matrix().imag())}};
}

Json to_json(const Ensemble& ensemble) {
  Json states = Json::array();
  for (const auto& s : ensemble.states()) states.push_back(to_json(s.op()));
  return Json{{"priors", ensemble.priors()}, {"states", std::move(states)}};
}

Json to_json(const CqCodebookInstance& code) {
  Json outputs = Json::array();
  for (const auto& w : code.outputs()) outputs.push_back(to_json(w.op()));
  Json j{{"M", code.size()}, {"outputs", std::move(outputs)}};
  if (!code.labels().empty()) j["labels"] = code.labels();
  return j;
}

Json to_json(const DiscriminationResult& result) {
  Json povm = Json::array();
  for (const auto& e : result.povm.effects()) povm.push_back(to_json(e));
  Json j;
  j["epsilon"] = result.epsilon;
  j["dual_bound"] = result.dual_bound;
  j["gap"] = result.gap;
  j["holevo_residual"] = result.holevo_residual;
  j["c0_star"] = result.c0_star;
  j["certified"] = result.certified;
  j["iterations"] = result.iterations;
  j["restart"] = result.restart;
  j["povm"] = std::move(povm);
  j["lambda"] = to_json(result.lambda);
  j["dual"] = to_json(result.dual);
  j["mu0_star"] = to_json(result.mu0_star.op());
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

DensityOperator load_density(const std::filesystem::path& path) {
  return density_from_json(read_json_file(path), path.filename().string());
}

Ensemble load_ensemble(const std::filesystem::path& path) { return ensemble_from_json(read_json_file(path)); }

CqCodebookInstance load_code(const std::filesystem::path& path) { return code_from_json(read_json_file(path)); }

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string dump(const Json& j) {
  std::string out;
  dump_into(out, j);
  return out;
}

void write_record(std::ostream& out, const Record& record, TableFormat format) {
  bool first = true;
  if (format == TableFormat::Csv) {
    for (const auto& f : record) {
      if (!first) out << ',';
      first = false;
      out << csv_cell(f.value);
    }
  } else {
    out << '{';
    for (const auto& f : record) {
      if (!first) out << ',';
      first = false;
      out << Json(f.name).dump() << ':' << json_cell(f.value);
    }
    out << '}';
  }
  out << '\n';
}

void write_csv_header(std::ostream& out, const Record& record) {
  bool first = true;
  for (const auto& f : record) {
    if (!first) out << ',';
    first = false;
    out << f.name;
  }
  out << '\n';
}

Record to_record(const AlphaCurvePoint& point) {
  return {{"beta", point.beta},
          {"alpha", point.alpha},
          {"t", point.witness.threshold},
          {"gamma", point.witness.null_mix}};
}

Record to_record(const VerificationReport& report) {
  return {{"id", static_cast<std::int64_t>(report.id)},
          {"dim", static_cast<std::int64_t>(report.dim)},
          {"M", static_cast<std::int64_t>(report.hypotheses)},
          {"epsilon", report.epsilon},
          {"gap", report.gap},
          {"holevo_residual", report.holevo_residual},
          {"theorem1_delta", report.theorem1_delta},
          {"theorem2_delta", report.theorem2_delta},
          {"degeneracy_deviation", report.degeneracy_deviation},
          {"sampled_max_excess", report.sampled_max_excess},
          {"certified", report.certified}};
}

Record to_record(const ConverseReport& report) {
  return {{"seed", static_cast<std::int64_t>(report.seed)},
          {"pe", report.pe},
          {"meta_mu0star", report.meta_converse_at_mu0star},
          {"hn_opt", report.hayashi_nagaoka_at_opt},
          {"wang_renner", report.wang_renner},
          {"slack_wr", report.slack_wr},
          {"gap", report.gap},
          {"certified", report.certified}};
}

}  // namespace qht::io
