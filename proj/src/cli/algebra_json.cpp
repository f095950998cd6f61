#include "koszul/cli/algebra_json.hpp"

#include "koszul/error.hpp"

namespace koszul::cli {

using json = nlohmann::ordered_json;

namespace {

json maps_json(const std::vector<std::vector<SparseMatrix>>& maps) {
  json out = json::array();
  for (const auto& layer : maps) {
    json l = json::array();
    for (const auto& m : layer) {
      json cols = json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) {
        json col = json::array();
        for (const auto& e : m.column(c).entries) col.push_back({e.index, e.value});
        cols.push_back(std::move(col));
      }
      l.push_back(std::move(cols));
    }
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<std::vector<SparseMatrix>> maps_from(const json& j, const std::vector<std::size_t>& dims) {
  std::vector<std::vector<SparseMatrix>> out;
  for (std::size_t n = 0; n < j.size(); ++n) {
    std::vector<SparseMatrix> layer;
    const std::size_t rows = n + 1 < dims.size() ? dims[n + 1] : 0;
    for (const auto& cols : j[n]) {
      SparseMatrix m(rows, cols.size());
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& e : cols[c])
          m.column(c).entries.push_back({e.at(0).get<std::uint32_t>(), e.at(1).get<Coeff>()});
      layer.push_back(std::move(m));
    }
    out.push_back(std::move(layer));
  }
  return out;
}

}  // namespace

json algebra_to_json(const GradedAlgebra& A) {
  if (A.is_opposite())
    throw Error(ErrorCode::invalid_params, "serialize the algebra, not its opposite view");
  auto t = A.tables();
  json basis = json::array();
  for (const auto& layer : t.basis) {
    json l = json::array();
    for (const auto& w : layer) l.push_back(w);
    basis.push_back(std::move(l));
  }
  json j;
  j["version"] = kAlgebraCacheVersion;
  j["p"] = A.field().p();
  j["N"] = A.truncation();
  j["dims"] = t.dims;
  j["basis"] = std::move(basis);
  j["rmult"] = maps_json(t.right);
  j["lmult"] = maps_json(t.left);
  return j;
}

GradedAlgebra algebra_from_json(const json& j, const QuadraticPresentation& pres) {
  try {
    if (j.at("version").get<int>() != kAlgebraCacheVersion)
      throw Error(ErrorCode::invalid_params, "unsupported cache version");
    if (j.at("p").get<std::uint32_t>() != pres.p())
      throw Error(ErrorCode::invalid_params, "cached algebra is over a different field");
    GradedAlgebra::Tables t;
    t.dims = j.at("dims").get<std::vector<std::size_t>>();
    if (j.at("N").get<std::size_t>() + 1 != t.dims.size())
      throw Error(ErrorCode::invalid_params, "N does not match dims");
    for (const auto& layer : j.at("basis")) {
      std::vector<Word> l;
      for (const auto& w : layer) l.push_back(w.get<Word>());
      t.basis.push_back(std::move(l));
    }
    t.right = maps_from(j.at("rmult"), t.dims);
    t.left = maps_from(j.at("lmult"), t.dims);
    return GradedAlgebra::from_tables(pres, std::move(t));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_params, std::string("malformed algebra cache: ") + e.what());
  }
}

}  // namespace koszul::cli
