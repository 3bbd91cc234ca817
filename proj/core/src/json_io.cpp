#include "dqkit/io/json_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace dqkit::io {

namespace {

std::string at_index(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }
std::string at_key(const std::string& where, const std::string& k) { return where + "/" + k; }

const json& array_from(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where, "expected an array");
  return j;
}

// line and column of a byte offset, both 1-based
std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

json parse_document(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending character
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, col] = line_column(text, byte);
    std::ostringstream where;
    where << source << ":" << line << ":" << col << " (byte " << byte << ")";
    std::string what = e.what();
    auto pos = what.find("syntax error");
    throw InputError(where.str(), pos == std::string::npos ? what : what.substr(pos));
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path);
}

const json& member(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw InputError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where.empty() ? "/" : where, "missing member \"" + key + "\"");
  return *it;
}

int int_from(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where, "expected an integer");
  return j.get<int>();
}

Rational rational_from(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError(where, "bad rational \"" + j.get<std::string>() + "\"");
    }
  }
  throw InputError(where, "expected a rational as \"p/q\" or an integer");
}

json to_json(const Rational& q) { return to_string(q); }

TrigPoly trig_poly_from(const json& j, int dim, const std::string& where) {
  TrigPoly f(dim);
  const json& a = array_from(j, where);
  for (std::size_t t = 0; t < a.size(); ++t) {
    const std::string w = at_index(where, t);
    const json& rec = a[t];
    const json& fr = array_from(member(rec, "freq", w), at_key(w, "freq"));
    if (static_cast<int>(fr.size()) != dim)
      throw InputError(at_key(w, "freq"), "frequency needs " + std::to_string(dim) + " entries");
    std::vector<int> k;
    for (std::size_t i = 0; i < fr.size(); ++i) k.push_back(int_from(fr[i], at_index(at_key(w, "freq"), i)));
    Gaussian c;
    if (rec.contains("re")) c.re = rational_from(rec["re"], at_key(w, "re"));
    if (rec.contains("im")) c.im = rational_from(rec["im"], at_key(w, "im"));
    f.add_term(make_frequency(k), c);
  }
  return f;
}

json to_json(const TrigPoly& f) {
  json out = json::array();
  for (const auto& [k, c] : f.terms()) {
    json freq = json::array();
    for (int i = 0; i < f.dim(); ++i) freq.push_back(k[i]);
    out.push_back({{"freq", freq}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
  }
  return out;
}

ConnectionSpec connection_from(const json& j, const std::string& where) {
  const int m = int_from(member(j, "m", where), at_key(where, "m"));
  if (m < 1 || m > 3) throw InputError(at_key(where, "m"), "m must be 1, 2 or 3");
  const int n = 2 * m;
  ConnectionSpec out;
  if (j.contains("omega")) {
    const std::string w = at_key(where, "omega");
    const json& rows = array_from(j["omega"], w);
    if (static_cast<int>(rows.size()) != n) throw InputError(w, "omega needs " + std::to_string(n) + " rows");
    SquareMatrix<Rational> om(n, Rational(0));
    for (int r = 0; r < n; ++r) {
      const json& row = array_from(rows[r], at_index(w, r));
      if (static_cast<int>(row.size()) != n) throw InputError(at_index(w, r), "row has the wrong length");
      for (int c = 0; c < n; ++c) om(r, c) = rational_from(row[c], at_index(at_index(w, r), c));
    }
    try {
      out.structure = SymplecticStructure(om);
    } catch (const std::invalid_argument& e) {
      throw InputError(w, e.what());
    }
  } else {
    out.structure = SymplecticStructure(m);
  }
  SymTensor3 upper(3, n, TrigPoly(n));
  std::vector<bool> set(static_cast<std::size_t>(n) * n * n, false);
  if (j.contains("gamma")) {
    const std::string w = at_key(where, "gamma");
    const json& entries = array_from(j["gamma"], w);
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const std::string we = at_index(w, e);
      const json& ix = array_from(member(entries[e], "index", we), at_key(we, "index"));
      if (ix.size() != 3) throw InputError(at_key(we, "index"), "index needs three entries");
      std::array<int, 3> s{};
      for (int r = 0; r < 3; ++r) {
        s[r] = int_from(ix[r], at_index(at_key(we, "index"), r));
        if (s[r] < 0 || s[r] >= n) throw InputError(at_index(at_key(we, "index"), r), "index out of range");
      }
      std::sort(s.begin(), s.end());
      TrigPoly v = trig_poly_from(member(entries[e], "value", we), n, at_key(we, "value"));
      if (!v.is_real()) throw InputError(at_key(we, "value"), "connection components must be real");
      std::size_t flat = (static_cast<std::size_t>(s[0]) * n + s[1]) * n + s[2];
      if (set[flat] && !(upper(s[0], s[1], s[2]) == v))
        throw InputError(we, "conflicts with an earlier entry for the same symmetric index");
      upper(s[0], s[1], s[2]) = v;
      set[flat] = true;
    }
  }
  out.gamma = symmetric_completion(upper);
  return out;
}

json to_json(const SymplecticStructure& s, const SymTensor3& gamma) {
  const int n = s.dim();
  json om = json::array();
  for (int r = 0; r < n; ++r) {
    json row = json::array();
    for (int c = 0; c < n; ++c) row.push_back(to_string(s.omega(r, c)));
    om.push_back(row);
  }
  json g = json::array();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k)
        if (!gamma(i, j, k).is_zero()) g.push_back({{"index", {i, j, k}}, {"value", to_json(gamma(i, j, k))}});
  return {{"m", s.m()}, {"omega", om}, {"gamma", g}};
}

Polynomial univariate_from(const json& j, const std::string& where) {
  const json& a = array_from(j, where);
  std::vector<Rational> c;
  for (std::size_t i = 0; i < a.size(); ++i) c.push_back(rational_from(a[i], at_index(where, i)));
  if (c.empty()) return Polynomial(1);
  return Polynomial::univariate(c);
}

SphereProfile profile_from(const json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "round") return SphereProfile::round();
  try {
    if (j.is_object() && j.contains("correction"))
      return SphereProfile::from_correction(univariate_from(j["correction"], at_key(where, "correction")));
    const std::string w = at_key(where, "psi_coeffs");
    const json& a = array_from(member(j, "psi_coeffs", where), w);
    std::vector<Rational> c;
    for (std::size_t i = 0; i < a.size(); ++i) c.push_back(rational_from(a[i], at_index(w, i)));
    return SphereProfile(c);
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
}

json to_json(const SphereProfile& p) {
  json c = json::array();
  for (const auto& q : p.psi_coefficients()) c.push_back(to_string(q));
  return {{"psi_coeffs", c}};
}

ModeFunction mode_function_from(const json& j, const std::string& where) {
  const json& a = array_from(j, where);
  ModeFunction f;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const std::string w = at_index(where, t);
    int n = int_from(member(a[t], "n", w), at_key(w, "n"));
    Polynomial re = a[t].contains("re") ? univariate_from(a[t]["re"], at_key(w, "re")) : Polynomial(1);
    Polynomial im = a[t].contains("im") ? univariate_from(a[t]["im"], at_key(w, "im")) : Polynomial(1);
    f += ModeFunction::mode(n, re, im);
  }
  return f;
}

HilbertWeightData hilbert_data_from(const json& j, const std::string& where) {
  HilbertWeightData d;
  d.m = int_from(member(j, "m", where), at_key(where, "m"));
  if (d.m < 1) throw InputError(at_key(where, "m"), "m must be positive");
  const std::string w = at_key(where, "samples");
  const json& s = array_from(member(j, "samples", where), w);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::string wi = at_index(w, i);
    const json& row = array_from(s[i], wi);
    if (row.size() != 3) throw InputError(wi, "sample must be [k, d, \"w\"]");
    if (!row[0].is_number_integer()) throw InputError(at_index(wi, 0), "k must be an integer");
    if (!row[1].is_number_integer()) throw InputError(at_index(wi, 1), "d must be an integer");
    d.samples.push_back({row[0].get<long>(), row[1].get<long>(), rational_from(row[2], at_index(wi, 2))});
  }
  return d;
}

}  // namespace dqkit::io
