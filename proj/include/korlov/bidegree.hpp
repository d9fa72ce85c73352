#pragma once
/* Bidegrees (internal, cohomological), rectangular windows, and bigraded
 * dimension tables with per-entry certification and stabilization flags.
 */
#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace korlov {

struct Bidegree {
    int i = 0;  // internal degree
    int j = 0;  // cohomological degree
    friend bool operator==(const Bidegree& a, const Bidegree& b) { return a.i == b.i && a.j == b.j; }
    friend bool operator<(const Bidegree& a, const Bidegree& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    }
    Bidegree operator+(const Bidegree& o) const { return {i + o.i, j + o.j}; }
    std::string to_string() const { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }
};

struct BidegWindow {
    int i_min = 0, i_max = 0, j_min = 0, j_max = 0;
    bool valid() const { return i_min <= i_max && j_min <= j_max; }
    bool contains(const Bidegree& b) const {
        return b.i >= i_min && b.i <= i_max && b.j >= j_min && b.j <= j_max;
    }
    bool contains(const BidegWindow& w) const {
        return w.i_min >= i_min && w.i_max <= i_max && w.j_min >= j_min && w.j_max <= j_max;
    }
    bool empty_marker() const { return i_min > i_max || j_min > j_max; }
    static BidegWindow empty() { return {0, -1, 0, -1}; }
    BidegWindow intersect(const BidegWindow& w) const {
        return {std::max(i_min, w.i_min), std::min(i_max, w.i_max), std::max(j_min, w.j_min),
                std::min(j_max, w.j_max)};
    }
    std::string to_string() const {
        return "[" + std::to_string(i_min) + ":" + std::to_string(i_max) + "," + std::to_string(j_min) +
               ":" + std::to_string(j_max) + "]";
    }
};

struct WindowInsufficientError : std::runtime_error {
    Bidegree at;
    explicit WindowInsufficientError(Bidegree b, const std::string& what_part = "")
        : std::runtime_error("window insufficient at bidegree " + b.to_string() +
                             (what_part.empty() ? "" : ": " + what_part)),
          at(b) {}
};

struct InvalidInputError : std::runtime_error {
    explicit InvalidInputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CertificationError : std::runtime_error {
    explicit CertificationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimEntry {
    long long dim = 0;
    bool certified = false;
    bool stabilized = true;
};

struct BigradedDimTable {
    std::map<Bidegree, DimEntry> entries;
    BidegWindow certified_region = BidegWindow::empty();  // bounding summary

    long long dim_at(const Bidegree& b) const {
        auto it = entries.find(b);
        return it == entries.end() ? 0 : it->second.dim;
    }
    bool certified_at(const Bidegree& b) const {
        auto it = entries.find(b);
        return it != entries.end() && it->second.certified;
    }
    void set(const Bidegree& b, long long d, bool cert, bool stab = true) {
        entries[b] = DimEntry{d, cert, stab};
    }
    bool all_zero_certified() const {
        for (auto& [b, e] : entries)
            if (e.certified && e.dim != 0) return false;
        return true;
    }

    nlohmann::json to_json() const;
    static BigradedDimTable from_json(const nlohmann::json& j);
    std::string to_csv() const;
};

}  // namespace korlov
