#include "korlov/bidegree.hpp"

namespace korlov {

nlohmann::json BigradedDimTable::to_json() const {
    nlohmann::json entries_j = nlohmann::json::array();
    for (auto& [b, e] : entries) {
        entries_j.push_back({{"i", b.i},
                             {"j", b.j},
                             {"dim", e.dim},
                             {"certified", e.certified},
                             {"stabilized", e.stabilized}});
    }
    nlohmann::json out;
    out["entries"] = entries_j;
    out["certified_region"] = {{"i_min", certified_region.i_min},
                               {"i_max", certified_region.i_max},
                               {"j_min", certified_region.j_min},
                               {"j_max", certified_region.j_max}};
    return out;
}

BigradedDimTable BigradedDimTable::from_json(const nlohmann::json& j) {
    BigradedDimTable t;
    for (auto& e : j.at("entries")) {
        Bidegree b{e.at("i").get<int>(), e.at("j").get<int>()};
        t.entries[b] = DimEntry{e.at("dim").get<long long>(), e.at("certified").get<bool>(),
                                e.at("stabilized").get<bool>()};
    }
    auto& r = j.at("certified_region");
    t.certified_region = {r.at("i_min").get<int>(), r.at("i_max").get<int>(), r.at("j_min").get<int>(),
                          r.at("j_max").get<int>()};
    return t;
}

std::string BigradedDimTable::to_csv() const {
    std::string s = "i,j,dim,certified,stabilized\n";
    for (auto& [b, e] : entries) {
        s += std::to_string(b.i) + "," + std::to_string(b.j) + "," + std::to_string(e.dim) + "," +
             (e.certified ? "true" : "false") + "," + (e.stabilized ? "true" : "false") + "\n";
    }
    return s;
}

}  // namespace korlov
