#ifndef TROLAB_JSON_IO_HPP
#define TROLAB_JSON_IO_HPP

#include <json.hpp>

#include "trolab/algebra.hpp"
#include "trolab/maps.hpp"

namespace trolab {

using json = nlohmann::json;

// {"rows":n,"cols":m,"re":[...],"im":[...]} row-major
json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

// {"blocks":[k1,...,ks]}
json to_json(const Algebra& a);
Algebra algebra_from_json(const json& j);

// {"algebra":...,"n":level,"blocks":[matrix,...]}
json to_json(const Element& e);
Element element_from_json(const json& j);

// {"domain":...,"codomain":...,"matrix":...}
json to_json(const LinearMap& t);
LinearMap map_from_json(const json& j);

}  // namespace trolab

#endif
