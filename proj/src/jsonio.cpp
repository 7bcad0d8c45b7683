#include "cdual/jsonio.hpp"

#include <fstream>
#include <sstream>

namespace cdual::io {

using gf::FieldPtr;
using gf::Fq;
using gf::PVec;

namespace {

const json& expect(const json& j, const std::string& path, json::value_t t,
                   const char* what) {
  if (j.type() != t) throw SchemaError(path, std::string(what) + " expected");
  return j;
}

uint64_t expect_uint(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<uint64_t>();
  if (j.is_number_integer() && j.get<int64_t>() >= 0)
    return uint64_t(j.get<int64_t>());
  throw SchemaError(path, "nonnegative integer expected");
}

const json& expect_field(const json& j, const std::string& path,
                         const char* key) {
  if (!j.is_object()) throw SchemaError(path, "object expected");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key, "missing");
  return *it;
}

json coords_json(const FieldPtr& F, const Fq& a) {
  json r = json::array();
  for (uint16_t c : F->coords(a)) r.push_back(uint32_t(c));
  return r;
}

json rep_json(const ideals::LocusClass& cls) {
  json r = json::array();
  for (auto& x : cls.rep) r.push_back(coords_json(cls.ext, x));
  return r;
}

const char* kind_str(census::SingKind k) {
  switch (k) {
    case census::SingKind::node: return "node";
    case census::SingKind::special: return "special";
    default: return "unknown";
  }
}

json sing_record_json(const census::SingRecord& r) {
  json j{{"stratum", r.stratum},
         {"points", r.points},
         {"x_degree", r.x_degree},
         {"fiber_degree", r.fiber_degree},
         {"kind", kind_str(r.kind)}};
  j["mu"] = r.mu ? json(*r.mu) : json(nullptr);
  j["branches"] = r.branches ? json(*r.branches) : json(nullptr);
  if (r.cls) {
    j["ext_degree"] = r.cls->ext->k();
    j["rep"] = rep_json(*r.cls);
  }
  return j;
}

} // namespace

json curve_to_json(const curves::Curve& C) {
  const FieldPtr& F = C.field;
  json field{{"k", F->k()}, {"modulus", json::array()}};
  for (uint16_t c : F->modulus()) field["modulus"].push_back(uint32_t(c));
  json a = json::array();
  for (auto& x : C.a) a.push_back(coords_json(F, x));
  return json{{"schema", 1},
              {"p", F->p()},
              {"q", C.q},
              {"field", field},
              {"a", a}};
}

curves::Curve curve_from_json(const json& j, uint64_t field_seed) {
  expect(j, "$", json::value_t::object, "object");
  if (expect_uint(expect_field(j, "$", "schema"), "$.schema") != 1)
    throw SchemaError("$.schema", "unsupported schema version");
  uint64_t p = expect_uint(expect_field(j, "$", "p"), "$.p");
  if (p < 2 || p >= (1u << 16)) throw SchemaError("$.p", "prime out of range");
  for (uint64_t f = 2; f * f <= p; ++f)
    if (p % f == 0) throw SchemaError("$.p", "p must be prime");
  uint64_t q = expect_uint(expect_field(j, "$", "q"), "$.q");
  uint64_t t = p;
  while (t < q) t *= p;
  if (t != q || q < 2) throw SchemaError("$.q", "q must be a power of p");

  const json& jf = expect_field(j, "$", "field");
  uint64_t k = expect_uint(expect_field(jf, "$.field", "k"), "$.field.k");
  if (k < 1 || k > 64) throw SchemaError("$.field.k", "extension degree out of range");
  const json& jm = expect_field(jf, "$.field", "modulus");
  expect(jm, "$.field.modulus", json::value_t::array, "array");
  if (jm.size() != k + 1)
    throw SchemaError("$.field.modulus", "length must be k + 1");
  PVec mod;
  for (size_t i = 0; i < jm.size(); ++i) {
    uint64_t c = expect_uint(jm[i], "$.field.modulus[" + std::to_string(i) + "]");
    if (c >= p)
      throw SchemaError("$.field.modulus[" + std::to_string(i) + "]",
                        "coefficient not reduced mod p");
    mod.push_back(uint16_t(c));
  }
  if (mod.back() != 1) throw InvalidModulus("must be monic");
  FieldPtr F;
  try {
    F = gf::Field::make_with_modulus(uint32_t(p), mod, field_seed);
  } catch (const gf::FieldError& e) {
    throw InvalidModulus(e.what());
  }

  const json& ja = expect_field(j, "$", "a");
  expect(ja, "$.a", json::value_t::array, "array");
  if (ja.size() != 27) throw SchemaError("$.a", "exactly 27 entries required");
  curves::Curve C{F, uint32_t(q), {}};
  for (size_t i = 0; i < 27; ++i) {
    std::string path = "$.a[" + std::to_string(i) + "]";
    expect(ja[i], path, json::value_t::array, "array");
    if (ja[i].size() != k)
      throw SchemaError(path, "coordinate list must have k entries");
    PVec v;
    for (size_t c = 0; c < k; ++c) {
      uint64_t x = expect_uint(ja[i][c], path + "[" + std::to_string(c) + "]");
      if (x >= p)
        throw SchemaError(path + "[" + std::to_string(c) + "]",
                          "coordinate not reduced mod p");
      v.push_back(uint16_t(x));
    }
    C.a[i] = F->from_coords(v);
  }
  return C;
}

json dual_to_json(const dual::DualCurve& D) {
  return json{{"schema", 1},
              {"degree", D.degree},
              {"method", D.method == dual::DualMethod::closed_form
                             ? "closed_form"
                             : "interpolation"},
              {"H", poly::mp_to_string(D.H)}};
}

json sing_census_to_json(const census::SingCensus& cen, uint32_t dual_degree) {
  json records = json::array();
  for (auto& r : cen.records) records.push_back(sing_record_json(r));
  json j{{"schema", 1},
         {"dual_degree", dual_degree},
         {"node_count", cen.node_count},
         {"special_count", cen.special_count},
         {"unknown_count", cen.unknown_count},
         {"complete", cen.unknown_count == 0},
         {"genus_smooth", census::genus_smooth(dual_degree)},
         {"records", records}};
  try {
    j["genus_from_census"] = census::genus_from_census(dual_degree, cen);
  } catch (const std::exception&) {
    j["genus_from_census"] = nullptr;
  }
  return j;
}

json flex_census_to_json(const census::FlexCensus& fx) {
  json records = json::array();
  for (auto& r : fx.records) {
    json jr{{"stratum", r.stratum},
            {"points", r.points},
            {"x_degree", r.x_degree},
            {"fiber_degree", r.fiber_degree}};
    jr["hyper"] = r.hyper ? json(*r.hyper) : json(nullptr);
    if (r.cls) {
      jr["ext_degree"] = r.cls->ext->k();
      jr["rep"] = rep_json(*r.cls);
    }
    records.push_back(std::move(jr));
  }
  return json{{"schema", 1},
              {"flex_count", fx.flex_count},
              {"hyperflex_count", fx.hyperflex_count},
              {"records", records}};
}

json report_to_json(const census::CensusReport& rep) {
  json flags{{"degree_ok", rep.degree_ok},
             {"dual_verified", rep.dual_verified},
             {"nodes_ok", rep.nodes_ok},
             {"delta_ok", rep.delta_ok},
             {"flex_ok", rep.flex_ok},
             {"special_ok", rep.special_ok},
             {"bh_ok", rep.bh_ok},
             {"dual_equal_ok", rep.dual_equal_ok},
             {"genus_ok", rep.genus_ok}};
  json specials = json::array();
  for (auto& r : rep.specials) specials.push_back(sing_record_json(r));
  json j{{"schema", 1},
         {"q", rep.q},
         {"seed", rep.seed},
         {"trial", rep.trial},
         {"resamples", rep.resamples},
         {"dual_degree", rep.dual_degree},
         {"node_count", rep.node_count},
         {"special_count", rep.special_count},
         {"unknown_count", rep.unknown_count},
         {"flex_count", rep.flex_count},
         {"hyperflex_count", rep.hyperflex_count},
         {"genus_source", rep.genus_source},
         {"genus_dual", rep.genus_dual},
         {"flags", flags},
         {"specials", specials},
         {"pass", rep.pass},
         {"note", rep.note}};
  if (rep.member) j["member"] = curve_to_json(*rep.member);
  return j;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("$", "cannot open " + path + " for writing");
  out << canonical_dump(j);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("$", "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("$", std::string("parse failure: ") + e.what());
  }
}

} // namespace cdual::io
