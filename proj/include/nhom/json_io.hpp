#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "nhom/sequence.hpp"

namespace nhom {

using Json = nlohmann::json;

/// Entries that fit a signed 64-bit integer are emitted as JSON numbers,
/// anything larger as a decimal string. The parser accepts both forms.
inline Json int_to_json(const Int& v) {
  if (fits_long(v)) return Json(static_cast<std::int64_t>(to_long(v)));
  return Json(v.get_str());
}

inline Int json_to_int(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
      return Int(std::to_string(j.get<std::uint64_t>()));
    return Int(static_cast<long>(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      return Int(s);
    } catch (const std::invalid_argument&) {
      fail(where + ": '" + s + "' is not a decimal integer");
    }
  }
  fail(where + ": expected an integer or a decimal string");
}

inline Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline IntMatrix json_to_matrix(const Json& j, std::size_t rows, std::size_t cols,
                                const std::string& where) {
  require(j.is_array(), where + ": expected a list of rows");
  require(j.size() == rows, where + ": expected " + std::to_string(rows) + " rows, found " +
                                std::to_string(j.size()));
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    require(row.is_array() && row.size() == cols,
            where + ".row[" + std::to_string(i) + "]: expected " + std::to_string(cols) +
                " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m.at(i, c) = json_to_int(row[c], where + "[" + std::to_string(i) + "][" +
                                           std::to_string(c) + "]");
  }
  return m;
}

inline Json invariants_to_json(const GroupInvariants& inv) {
  Json factors = Json::array();
  for (const Int& f : inv.factors) factors.push_back(int_to_json(f));
  return Json{{"free_rank", inv.free_rank},
              {"invariant_factors", std::move(factors)},
              {"pretty", inv.to_string()}};
}

struct ComplexFile {
  Sequence sequence;
  std::optional<int> declared_n;
};

inline Json group_to_json(const PresentedGroup& g) {
  Json rels = Json::array();
  for (std::size_t c = 0; c < g.relations.cols(); ++c) {
    Json col = Json::array();
    for (std::size_t i = 0; i < g.generators; ++i) col.push_back(int_to_json(g.relations.at(i, c)));
    rels.push_back(std::move(col));
  }
  return Json{{"generators", g.generators}, {"relations", std::move(rels)}};
}

inline PresentedGroup json_to_group(const Json& j, const std::string& where) {
  require(j.is_object(), where + ": expected an object");
  require(j.contains("generators") && j["generators"].is_number_unsigned(),
          where + ".generators: expected a nonnegative count");
  std::size_t gens = j["generators"].get<std::size_t>();
  Json rels = j.value("relations", Json::array());
  require(rels.is_array(), where + ".relations: expected a list of relation vectors");
  IntMatrix m(gens, rels.size());
  for (std::size_t c = 0; c < rels.size(); ++c) {
    const Json& col = rels[c];
    const std::string colw = where + ".relations[" + std::to_string(c) + "]";
    require(col.is_array() && col.size() == gens,
            colw + ": expected " + std::to_string(gens) + " entries");
    for (std::size_t i = 0; i < gens; ++i)
      m.at(i, c) = json_to_int(col[i], colw + "[" + std::to_string(i) + "]");
  }
  return PresentedGroup(gens, std::move(m));
}

inline Json complex_to_json(const Sequence& c, std::optional<int> declared_n = std::nullopt) {
  Json objects = Json::array();
  Json diffs = Json::array();
  for (int i = c.lo(); i <= c.hi(); ++i) objects.push_back(group_to_json(c.object_at(i)));
  for (int i = c.lo(); i < c.hi(); ++i) diffs.push_back(matrix_to_json(c.differential_at(i).matrix));
  Json out{{"window", Json{{"lo", c.lo()}, {"hi", c.hi()}}},
           {"objects", std::move(objects)},
           {"differentials", std::move(diffs)}};
  if (declared_n) out["n"] = *declared_n;
  return out;
}

inline Json complex_to_json(const NComplex& c) { return complex_to_json(c.seq(), c.n()); }

inline ComplexFile parse_complex(const Json& j) {
  require(j.is_object(), "complex: expected a JSON object");
  require(j.contains("window") && j["window"].is_object(), "complex.window: missing");
  const Json& w = j["window"];
  require(w.contains("lo") && w.contains("hi") && w["lo"].is_number_integer() &&
              w["hi"].is_number_integer(),
          "complex.window: expected integer lo and hi");
  int lo = w["lo"].get<int>();
  int hi = w["hi"].get<int>();
  const Json& objs = j.value("objects", Json::array());
  require(objs.is_array(), "complex.objects: expected a list");
  std::size_t count = hi < lo ? 0 : static_cast<std::size_t>(hi - lo + 1);
  require(objs.size() == count, "complex.objects: window [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "] needs " + std::to_string(count) +
                                    " objects, found " + std::to_string(objs.size()));
  std::vector<PresentedGroup> objects;
  for (std::size_t k = 0; k < count; ++k)
    objects.push_back(json_to_group(objs[k], "complex.objects[" + std::to_string(k) + "]"));
  const Json& ds = j.value("differentials", Json::array());
  require(ds.is_array(), "complex.differentials: expected a list");
  std::size_t dcount = count == 0 ? 0 : count - 1;
  require(ds.size() == dcount, "complex.differentials: expected " + std::to_string(dcount) +
                                   " matrices, found " + std::to_string(ds.size()));
  std::vector<IntMatrix> diffs;
  for (std::size_t k = 0; k < dcount; ++k)
    diffs.push_back(json_to_matrix(ds[k], objects[k + 1].generators, objects[k].generators,
                                   "complex.differentials[" + std::to_string(k) + "]"));
  std::optional<int> declared;
  if (j.contains("n")) {
    require(j["n"].is_number_integer() && j["n"].get<int>() >= 1,
            "complex.n: expected a positive integer");
    declared = j["n"].get<int>();
  }
  return ComplexFile{Sequence::make(lo, std::move(objects), diffs), declared};
}

inline ComplexFile load_complex_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open complex file: " + path);
  Json j = Json::parse(in);  // parse errors carry byte positions
  return parse_complex(j);
}

inline Json morphism_to_json(const SeqMorphism& f) {
  Json comps = Json::array();
  int lo = std::min(f.source().lo(), f.target().lo());
  int hi = std::max(f.source().hi(), f.target().hi());
  for (int i = lo; i <= hi; ++i)
    comps.push_back(Json{{"position", i}, {"matrix", matrix_to_json(f.component_matrix_at(i))}});
  return Json{{"source", complex_to_json(f.source())},
              {"target", complex_to_json(f.target())},
              {"components", std::move(comps)}};
}

inline Sequence parse_complex_or_reference(const Json& j, const std::string& base_dir,
                                           const std::string& where) {
  require(j.is_object(), where + ": expected a complex or a {\"file\": path} reference");
  if (j.contains("file")) {
    require(j["file"].is_string(), where + ".file: expected a path string");
    std::filesystem::path p = j["file"].get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    return load_complex_file(p.string()).sequence;
  }
  return parse_complex(j).sequence;
}

inline SeqMorphism parse_morphism(const Json& j, const std::string& base_dir = "") {
  require(j.is_object(), "morphism: expected a JSON object");
  require(j.contains("source") && j.contains("target"), "morphism: source and target required");
  Sequence src = parse_complex_or_reference(j["source"], base_dir, "morphism.source");
  Sequence tgt = parse_complex_or_reference(j["target"], base_dir, "morphism.target");
  const Json& comps = j.value("components", Json::array());
  require(comps.is_array(), "morphism.components: expected a list");
  std::optional<int> lo, hi;
  for (const Json& entry : comps) {
    require(entry.is_object() && entry.contains("position") &&
                entry["position"].is_number_integer(),
            "morphism.components: each entry needs an integer position");
    int pos = entry["position"].get<int>();
    lo = lo ? std::min(*lo, pos) : pos;
    hi = hi ? std::max(*hi, pos) : pos;
  }
  if (!lo) return SeqMorphism::make(std::move(src), std::move(tgt), 0, {});
  std::vector<IntMatrix> matrices;
  for (int i = *lo; i <= *hi; ++i)
    matrices.push_back(
        IntMatrix(tgt.object_at(i).generators, src.object_at(i).generators));
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const Json& entry = comps[k];
    int pos = entry["position"].get<int>();
    const std::string where = "morphism.components[" + std::to_string(k) + "]";
    require(entry.contains("matrix"), where + ": matrix required");
    matrices[static_cast<std::size_t>(pos - *lo)] =
        json_to_matrix(entry["matrix"], tgt.object_at(pos).generators,
                       src.object_at(pos).generators, where + ".matrix");
  }
  return SeqMorphism::make(std::move(src), std::move(tgt), *lo, std::move(matrices));
}

inline SeqMorphism load_morphism_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open morphism file: " + path);
  Json j = Json::parse(in);
  return parse_morphism(j, std::filesystem::path(path).parent_path().string());
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  require(out.good(), "cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace nhom
