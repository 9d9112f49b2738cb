#include "steerdet/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "steerdet/error.hpp"

namespace steerdet {

using nlohmann::json;

namespace {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_f6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // Avoid "-0.000000" so output does not depend on the sign of tiny values.
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

std::size_t read_dim(const json& dims, std::size_t i) {
  const auto& d = dims.at(i);
  if (!d.is_number_integer() || d.get<long long>() < 1) {
    throw InputError("field 'dims' must hold two positive integers");
  }
  return static_cast<std::size_t>(d.get<long long>());
}

template <class Enum>
Enum enum_from(const json& j, std::initializer_list<std::pair<Enum, std::string_view>> table, const char* field) {
  const auto s = j.get<std::string>();
  for (const auto& [e, name] : table)
    if (name == s) return e;
  throw InputError(std::string("unknown value '") + s + "' for field '" + field + "'");
}

}  // namespace

DensityMatrix parse_state_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("state file must be a JSON object");
  if (!j.contains("dims")) throw InputError("missing field 'dims'");
  if (!j.contains("matrix")) throw InputError("missing field 'matrix'");
  const auto& dims_j = j["dims"];
  if (!dims_j.is_array() || dims_j.size() != 2) throw InputError("field 'dims' must be an array [d_A, d_B]");
  const BipartiteDims dims{read_dim(dims_j, 0), read_dim(dims_j, 1)};
  check_dims(dims);

  const auto& m = j["matrix"];
  const std::size_t n = dims.total();
  if (!m.is_array() || m.size() != n * n) {
    throw InputError("field 'matrix' must be an array of " + std::to_string(n * n) + " [re, im] pairs");
  }
  CMatrix mat(n, n);
  for (std::size_t k = 0; k < n * n; ++k) {
    const auto& e = m[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw InputError("field 'matrix' entry " + std::to_string(k) + " must be a [re, im] number pair");
    }
    mat(k / n, k % n) = cplx(e[0].get<double>(), e[1].get<double>());
  }
  return DensityMatrix::validate(mat, dims);
}

DensityMatrix read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open state file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_state_json(ss.str());
}

void write_state_json(const DensityMatrix& rho, std::ostream& out) {
  const std::size_t n = rho.dim();
  out << "{\"dims\": [" << rho.dims().a << ", " << rho.dims().b << "], \"matrix\": [";
  for (std::size_t k = 0; k < n * n; ++k) {
    const cplx z = rho.mat()(k / n, k % n);
    if (k) out << ", ";
    out << '[' << fmt_g17(z.real()) << ", " << fmt_g17(z.imag()) << ']';
  }
  out << "]}\n";
}

std::string state_to_json_string(const DensityMatrix& rho) {
  std::ostringstream ss;
  write_state_json(rho, ss);
  return ss.str();
}

// ---------------------------------------------------------------------------

void to_json(json& j, const EntanglementReport& r) {
  j = json{{"method", method_name(r.method)},
           {"entangled", r.entangled},
           {"min_pt_eig", r.min_pt_eig},
           {"negativity", r.negativity}};
  if (r.spa_min_eig) j["spa_min_eig"] = *r.spa_min_eig;
}

void from_json(const json& j, EntanglementReport& r) {
  r.method = enum_from<EntanglementMethod>(j.at("method"), {{EntanglementMethod::ppt, "ppt"}, {EntanglementMethod::spa, "spa"}},
                                           "method");
  r.entangled = j.at("entangled").get<bool>();
  r.min_pt_eig = j.at("min_pt_eig").get<double>();
  r.negativity = j.at("negativity").get<double>();
  r.spa_min_eig.reset();
  if (j.contains("spa_min_eig")) r.spa_min_eig = j["spa_min_eig"].get<double>();
}

namespace {

void put_direction(json& j, const char* suffix, const DirectionReport& d) {
  j[std::string("detected_") + suffix] = d.verdict == Verdict::detected;
  j[std::string("verdict_") + suffix] = verdict_name(d.verdict);
  j[std::string("witness_min_eig_") + suffix] = d.witness_min_eig ? json(*d.witness_min_eig) : json(nullptr);
}

DirectionReport get_direction(const json& j, const char* suffix) {
  DirectionReport d;
  d.verdict = enum_from<Verdict>(j.at(std::string("verdict_") + suffix),
                                 {{Verdict::detected, "detected"},
                                  {Verdict::not_detected, "not_detected"},
                                  {Verdict::not_applicable, "not_applicable"}},
                                 "verdict");
  const auto& w = j.at(std::string("witness_min_eig_") + suffix);
  if (!w.is_null()) d.witness_min_eig = w.get<double>();
  return d;
}

}  // namespace

void to_json(json& j, const SteeringReport& r) {
  j = json::object();
  put_direction(j, "BtoA", r.b_to_a);
  put_direction(j, "AtoB", r.a_to_b);
  j["mu_used"] = r.mu_used;
  j["ls2_value"] = r.ls2_value ? json(*r.ls2_value) : json(nullptr);
  j["ls3_value"] = r.ls3_value ? json(*r.ls3_value) : json(nullptr);
}

void from_json(const json& j, SteeringReport& r) {
  r.b_to_a = get_direction(j, "BtoA");
  r.a_to_b = get_direction(j, "AtoB");
  r.mu_used = j.at("mu_used").get<double>();
  r.ls2_value.reset();
  r.ls3_value.reset();
  if (!j.at("ls2_value").is_null()) r.ls2_value = j["ls2_value"].get<double>();
  if (!j.at("ls3_value").is_null()) r.ls3_value = j["ls3_value"].get<double>();
}

void to_json(json& j, const ThresholdResult& r) {
  j = json{{"param_name", r.param_name},
           {"boundary", r.boundary},
           {"bracket", {r.lo, r.hi}},
           {"detector", r.detector},
           {"direction_of_detection", side_name(r.side)},
           {"iterations", r.iterations}};
}

void from_json(const json& j, ThresholdResult& r) {
  r.param_name = j.at("param_name").get<std::string>();
  r.boundary = j.at("boundary").get<double>();
  const auto& br = j.at("bracket");
  if (!br.is_array() || br.size() != 2) throw InputError("field 'bracket' must be [lo, hi]");
  r.lo = br[0].get<double>();
  r.hi = br[1].get<double>();
  r.detector = j.at("detector").get<std::string>();
  r.side = enum_from<DetectionSide>(j.at("direction_of_detection"),
                                    {{DetectionSide::above, "above"}, {DetectionSide::below, "below"}},
                                    "direction_of_detection");
  r.iterations = j.at("iterations").get<int>();
}

// ---------------------------------------------------------------------------

void write_region_csv(const RegionGrid& grid, std::ostream& out) {
  out << kRegionCsvHeader << '\n';
  for (const auto& c : grid.cells) {
    out << fmt_f6(c.alpha) << ',' << fmt_f6(c.theta) << ',' << int(c.thm1_ba) << ',' << int(c.thm1_ab) << ','
        << int(c.ls2) << ',' << int(c.ls3) << '\n';
  }
}

void write_prescan_csv(const std::vector<ScanRow>& rows, std::ostream& out) {
  out << kPrescanCsvHeader << '\n';
  for (const auto& r : rows) {
    out << fmt_f6(r.param) << ',' << int(r.thm1_ba) << ',' << int(r.thm1_ab) << ',' << int(r.ls2) << ','
        << int(r.ls3) << '\n';
  }
}

}  // namespace steerdet
