#include "formats.hpp"

#include <fstream>
#include <sstream>

namespace koszulhh::io {

using nlohmann::json;

namespace {

BitVector bits(const std::string& text, std::size_t expected, const std::string& what) {
  BitVector v;
  try {
    v = BitVector::from_string(text);
  } catch (const std::exception&) {
    throw ParseError(what + ": '" + text + "' is not a 0/1 string");
  }
  if (v.size() != expected) {
    throw ParseError(what + ": expected " + std::to_string(expected) + " bits, got " + std::to_string(v.size()));
  }
  return v;
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Subring parse_subring(std::size_t atoms, const json& blocks) {
  try {
    return Subring(atoms, blocks.get<std::vector<std::vector<std::size_t>>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("subringBlocks: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("subringBlocks: ") + e.what());
  }
}

json subring_to_json(const Subring& subring) { return subring.blocks(); }

Subring parse_subring_text(std::size_t atoms, const std::string& text) {
  std::vector<std::vector<std::size_t>> blocks;
  std::stringstream outer(text);
  std::string block;
  while (std::getline(outer, block, '|')) {
    std::vector<std::size_t> atoms_in_block;
    std::stringstream inner(block);
    std::string item;
    while (std::getline(inner, item, ',')) {
      try {
        std::size_t used = 0;
        const auto value = std::stoul(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        atoms_in_block.push_back(value);
      } catch (const std::exception&) {
        throw ParseError("subring: '" + item + "' is not an atom index");
      }
    }
    blocks.push_back(std::move(atoms_in_block));
  }
  try {
    return Subring(atoms, blocks);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("subring: ") + e.what());
  }
}

CochainInput cochain_from_json(const json& j, const ResourceCaps& caps) {
  const auto v_dim = field<std::size_t>(j, "vDim");
  const auto atoms = field<std::size_t>(j, "atoms");
  const auto subring = j.contains("subringBlocks") ? parse_subring(atoms, j.at("subringBlocks")) : Subring::full(atoms);
  CoefficientPair pair(v_dim, subring);
  const auto k = field<int>(j, "k");
  const auto s = field<int>(j, "s");
  if (k < 0) throw ParseError("k must be nonnegative");
  auto f = zero_cochain(pair, k, s, caps);
  const auto alphabet = pair.alphabet();
  if (j.contains("values")) {
    if (!j.at("values").is_object()) throw ParseError("'values' must be an object");
    for (const auto& [key, value] : j.at("values").items()) {
      Word w;
      try {
        w = alphabet.parse(key);
      } catch (const std::exception& e) {
        throw ParseError("word '" + key + "': " + e.what());
      }
      const auto idx = f.basis->find(w);
      if (!idx) throw ParseError("word '" + key + "' is not an admissible sequence of length " + std::to_string(k));
      if (!value.is_string()) throw ParseError("value of '" + key + "' must be a string");
      f.set_value(*idx, bits(value.get<std::string>(), f.value_dim, "value of '" + key + "'"));
    }
  }
  return {std::move(pair), std::move(f)};
}

json cochain_to_json(const CoefficientPair& pair, const Cochain& f) {
  json j;
  j["vDim"] = pair.v_dim();
  j["atoms"] = pair.module().atom_count();
  if (!(pair.subring() == Subring::full(pair.module().atom_count()))) j["subringBlocks"] = subring_to_json(pair.subring());
  j["k"] = f.k;
  j["s"] = f.s;
  json values = json::object();
  const auto alphabet = pair.alphabet();
  for (std::size_t w = 0; w < f.word_count(); ++w) {
    const auto v = f.value(w);
    if (v.any()) values[alphabet.format(f.basis->word(w))] = v.to_string();
  }
  j["values"] = std::move(values);
  return j;
}

DgAlgebra dg_algebra_from_json(const json& j) {
  if (j.contains("connectedSum")) {
    const auto& cs = j.at("connectedSum");
    const auto top = field<int>(j, "top");
    if (top < 0) throw ParseError("top must be nonnegative");
    return dg_algebra_from_connected_sum(ConnectedSumAlgebra(field<std::size_t>(cs, "vDim"), field<std::size_t>(cs, "atoms")),
                                         top);
  }
  const auto dims = field<std::vector<std::size_t>>(j, "dims");
  if (dims.empty()) throw ParseError("dims must not be empty");
  DgAlgebra a(dims);
  a.set_unit(bits(field<std::string>(j, "unit"), a.dim(0), "unit"));
  if (j.contains("differential")) {
    for (const auto& [key, rows] : j.at("differential").items()) {
      int d = 0;
      try {
        d = std::stoi(key);
      } catch (const std::exception&) {
        throw ParseError("differential key '" + key + "' is not a degree");
      }
      if (d < 0 || d > a.top_degree()) throw ParseError("differential degree " + key + " out of range");
      const auto row_strings = rows.get<std::vector<std::string>>();
      if (row_strings.size() != a.dim(d + 1)) throw ParseError("differential " + key + " has the wrong number of rows");
      BitMatrix m(a.dim(d + 1), a.dim(d));
      for (std::size_t r = 0; r < row_strings.size(); ++r) {
        m.set_row(r, bits(row_strings[r], a.dim(d), "differential " + key));
      }
      a.set_differential(d, std::move(m));
    }
  }
  if (j.contains("products")) {
    for (const auto& [key, value] : j.at("products").items()) {
      int d1 = 0, d2 = 0;
      std::size_t i = 0, jj = 0;
      char c1 = 0, star = 0, c2 = 0;
      std::istringstream in(key);
      if (!(in >> d1 >> c1 >> i >> star >> d2 >> c2 >> jj) || c1 != ':' || star != '*' || c2 != ':' || !in.eof()) {
        throw ParseError("product key '" + key + "' is not of the form d:i*d:j");
      }
      if (i >= a.dim(d1) || jj >= a.dim(d2)) throw ParseError("product key '" + key + "' is out of range");
      a.set_product(d1, i, d2, jj, bits(value.get<std::string>(), a.dim(d1 + d2), "product " + key));
    }
  }
  return a;
}

json dg_algebra_to_json(const DgAlgebra& a) {
  json j;
  j["dims"] = a.dims();
  j["unit"] = a.unit().to_string();
  json diff = json::object();
  for (int d = 0; d < a.top_degree(); ++d) {
    const auto& m = a.differential(d);
    if (!m.is_zero()) diff[std::to_string(d)] = m.to_strings();
  }
  j["differential"] = std::move(diff);
  json products = json::object();
  for (int d1 = 0; d1 <= a.top_degree(); ++d1) {
    for (int d2 = 0; d1 + d2 <= a.top_degree(); ++d2) {
      for (std::size_t i = 0; i < a.dim(d1); ++i) {
        for (std::size_t k = 0; k < a.dim(d2); ++k) {
          const auto& v = a.product(d1, i, d2, k);
          if (v.any()) {
            products[std::to_string(d1) + ":" + std::to_string(i) + "*" + std::to_string(d2) + ":" + std::to_string(k)] =
                v.to_string();
          }
        }
      }
    }
  }
  j["products"] = std::move(products);
  return j;
}

GradedElement parse_element(const DgAlgebra& a, const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("element '" + text + "' is not of the form degree:bits");
  int degree = 0;
  try {
    degree = std::stoi(text.substr(0, colon));
  } catch (const std::exception&) {
    throw ParseError("element '" + text + "' has no degree");
  }
  if (degree < 0 || degree > a.top_degree()) throw ParseError("element '" + text + "' has degree out of range");
  return {degree, bits(text.substr(colon + 1), a.dim(degree), "element '" + text + "'")};
}

std::string format_element(const GradedElement& e) { return std::to_string(e.degree) + ":" + e.coeffs.to_string(); }

}  // namespace koszulhh::io
