#include "trolab/json_io.hpp"

namespace trolab {

json to_json(const ComplexMatrix& m) {
    std::vector<double> re, im;
    re.reserve(m.entries().size());
    im.reserve(m.entries().size());
    for (const cplx& v : m.entries()) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const json& j) {
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size() || re.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("matrix JSON: re/im length mismatch");
    std::vector<cplx> entries(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) entries[i] = {re[i], im[i]};
    return {rows, cols, std::move(entries)};
}

json to_json(const Algebra& a) { return json{{"blocks", a.block_dims()}}; }

Algebra algebra_from_json(const json& j) {
    return Algebra(j.at("blocks").get<std::vector<int>>());
}

json to_json(const Element& e) {
    json blocks = json::array();
    for (int i = 0; i < e.block_count(); ++i) blocks.push_back(to_json(e.block(i)));
    return json{{"algebra", to_json(e.algebra())}, {"n", e.level()}, {"blocks", blocks}};
}

Element element_from_json(const json& j) {
    Algebra a = algebra_from_json(j.at("algebra"));
    int level = j.at("n").get<int>();
    std::vector<ComplexMatrix> blocks;
    for (const json& b : j.at("blocks")) blocks.push_back(matrix_from_json(b));
    return {std::move(a), level, std::move(blocks)};
}

json to_json(const LinearMap& t) {
    return json{{"domain", to_json(t.domain())},
                {"codomain", to_json(t.codomain())},
                {"matrix", to_json(t.action())}};
}

LinearMap map_from_json(const json& j) {
    return {algebra_from_json(j.at("domain")), algebra_from_json(j.at("codomain")),
            matrix_from_json(j.at("matrix"))};
}

}  // namespace trolab
