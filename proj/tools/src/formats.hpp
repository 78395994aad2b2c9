#pragma once

// JSON readers and writers shared by the command line tool and its tests.
//
// Cochain file:
//   {"vDim": 0, "atoms": 3, "subringBlocks": [[0], [1], [2]],   (optional, default A = B)
//    "k": 3, "s": -1,
//    "values": {"x1,x2,x1": "100"}}
// Each value is a 0/1 string over the basis of M_{k+s} (v's first in degree 1).
// Words not listed map to zero.
//
// Dg-algebra file, either a connected sum
//   {"connectedSum": {"vDim": 2, "atoms": 3}, "top": 8}
// or an explicit table
//   {"dims": [1, 2, 1],
//    "unit": "1",
//    "differential": {"0": ["0", "0"], "1": ["11"]},    (rows of δ_d, as 0/1 strings)
//    "products": {"1:0*1:1": "1"}}                     (only nonzero products)
// An element is written "degree:bits", e.g. "1:01".

#include <string>
#include <vector>

#include <json.hpp>

#include "koszulhh/coboundary.hpp"
#include "koszulhh/massey.hpp"

namespace koszulhh::io {

/// Input that cannot be understood; the tool maps it to exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json read_json_file(const std::string& path);

Subring parse_subring(std::size_t atoms, const nlohmann::json& blocks);
nlohmann::json subring_to_json(const Subring& subring);
/// Parses "0,1|2" into blocks {0,1},{2}.
Subring parse_subring_text(std::size_t atoms, const std::string& text);

struct CochainInput {
  CoefficientPair pair;
  Cochain cochain;
};

CochainInput cochain_from_json(const nlohmann::json& j, const ResourceCaps& caps);
/// Only nonzero values are written.
nlohmann::json cochain_to_json(const CoefficientPair& pair, const Cochain& f);

DgAlgebra dg_algebra_from_json(const nlohmann::json& j);
nlohmann::json dg_algebra_to_json(const DgAlgebra& a);

GradedElement parse_element(const DgAlgebra& a, const std::string& text);
std::string format_element(const GradedElement& e);

}  // namespace koszulhh::io
