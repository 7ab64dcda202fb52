#include "borelcalc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "borelcalc/error.hpp"

namespace borelcalc::io {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::BadFormat, msg); }

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

cx to_cx(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    bad(std::string(what) + " must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<cx> to_cx_list(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) bad(std::string(what) + " must be a nonempty array of [re, im] pairs");
  std::vector<cx> out;
  for (const auto& e : j) out.push_back(to_cx(e, what));
  return out;
}

json from_cx(cx v) { return json::array({v.real(), v.imag()}); }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ExpPoly parse_exppoly(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("atoms") || !doc["atoms"].is_array()) bad("expected {\"atoms\": [...]}");
  std::vector<ExpAtom> atoms;
  for (const auto& a : doc["atoms"]) {
    if (!a.is_object() || !a.contains("zeta") || !a.contains("poly")) bad("each atom needs zeta and poly");
    atoms.push_back({to_cx(a["zeta"], "zeta"), to_cx_list(a["poly"], "poly")});
  }
  return ExpPoly(std::move(atoms));
}

TaylorRep parse_taylor(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("coeffs") || !doc.contains("tau")) bad("expected {\"coeffs\": [...], \"tau\": t}");
  if (!doc["tau"].is_number() || doc["tau"].get<double>() < 0.0) bad("tau must be a nonnegative number");
  return TaylorRep{to_cx_list(doc["coeffs"], "coeffs"), doc["tau"].get<double>()};
}

std::vector<cx> parse_coeffs(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("coeffs")) bad("expected {\"coeffs\": [...]}");
  return to_cx_list(doc["coeffs"], "coeffs");
}

std::string dump_exppoly(const ExpPoly& f) {
  json atoms = json::array();
  for (const auto& a : f.atoms()) {
    json poly = json::array();
    for (const auto& c : a.poly) poly.push_back(from_cx(c));
    atoms.push_back({{"zeta", from_cx(a.zeta)}, {"poly", poly}});
  }
  return json{{"atoms", atoms}}.dump();
}

std::string dump_taylor(const TaylorRep& f) {
  json coeffs = json::array();
  for (const auto& c : f.b) coeffs.push_back(from_cx(c));
  return json{{"coeffs", coeffs}, {"tau", f.tau}}.dump();
}

SampledSignal parse_samples_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) bad("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,re,im") bad("CSV header must be x,re,im");
  std::vector<double> xs;
  std::vector<cx> vals;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double x, re, im;
    char extra;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf %c", &x, &re, &im, &extra) != 3) {
      bad("malformed CSV row " + std::to_string(row));
    }
    xs.push_back(x);
    vals.emplace_back(re, im);
  }
  if (xs.size() < 2) bad("CSV needs at least two rows");
  const double dx = (xs.back() - xs.front()) / double(xs.size() - 1);
  if (!(dx > 0.0)) bad("x must be strictly increasing");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double expect = xs.front() + double(i) * dx;
    if (std::abs(xs[i] - expect) > 1e-9 * std::max(std::abs(dx), std::abs(expect))) {
      bad("x is not uniformly spaced at row " + std::to_string(i + 2));
    }
    if (i > 0 && !(xs[i] > xs[i - 1])) bad("x must be strictly increasing");
  }
  return SampledSignal{xs.front(), dx, std::move(vals)};
}

void write_points_csv(std::ostream& os, const std::vector<double>& x, const std::vector<cx>& values) {
  os << "x,re,im\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << format_double(x[i]) << ',' << format_double(values[i].real()) << ',' << format_double(values[i].imag())
       << '\n';
  }
}

void write_samples_csv(std::ostream& os, const SampledSignal& s) {
  std::vector<double> x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) x[i] = s.x(i);
  write_points_csv(os, x, s.values);
}

void write_zeros_csv(std::ostream& os, const ZeroSet& Z) {
  os << "re,im,multiplicity\n";
  for (const auto& z : Z.zeros) {
    os << format_double(z.zeta.real()) << ',' << format_double(z.zeta.imag()) << ',' << z.multiplicity << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::BadFormat, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::BadFormat, "cannot write " + path);
  out << content;
}

}  // namespace borelcalc::io
