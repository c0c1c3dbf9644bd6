#ifndef LEAFUPTAKE_DATASET_HPP
#define LEAFUPTAKE_DATASET_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "leafuptake/csv.hpp"

namespace leafuptake {

class DatasetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Compound { AJ, AI };
enum class Compartment { Droplet, Cuticle, LeafTissue, Rest };

inline std::string to_string(Compound c) { return c == Compound::AJ ? "AJ" : "AI"; }

inline std::string to_string(Compartment c) {
    switch (c) {
        case Compartment::Droplet: return "droplet";
        case Compartment::Cuticle: return "cuticle";
        case Compartment::LeafTissue: return "leaf_tissue";
        case Compartment::Rest: return "rest";
    }
    throw DatasetError("unknown compartment tag");
}

inline Compound compound_from(std::string_view token) {
    if (token == "AJ") return Compound::AJ;
    if (token == "AI") return Compound::AI;
    throw DatasetError("unknown compound token '" + std::string(token) + "' (expected AJ|AI)");
}

inline Compartment compartment_from(std::string_view token) {
    if (token == "droplet") return Compartment::Droplet;
    if (token == "cuticle") return Compartment::Cuticle;
    if (token == "leaf_tissue") return Compartment::LeafTissue;
    if (token == "rest") return Compartment::Rest;
    throw DatasetError("unknown compartment token '" + std::string(token)
                       + "' (expected droplet|cuticle|leaf_tissue|rest)");
}

/// One experimental observation: compartment mean and 95% CI bounds as
/// percentages of that compound's initial total.
struct DatasetRow {
    double t = 0.0;  ///< [min]
    Compound compound = Compound::AJ;
    Compartment compartment = Compartment::Droplet;
    double mean_pct = 0.0;
    double ci_lo_pct = 0.0;
    double ci_hi_pct = 0.0;
};

inline constexpr const char* kDatasetHeader = "t_min,compound,compartment,mean_pct,ci_lo_pct,ci_hi_pct";

/// Validated, immutable-after-load series of compartment observations keyed
/// by (t, compound, compartment).
class DatasetSeries {
public:
    using Key = std::tuple<double, Compound, Compartment>;

    const std::vector<DatasetRow>& rows() const { return rows_; }

    bool has(Compound compound, Compartment compartment, double t) const {
        return index_.count({t, compound, compartment}) > 0;
    }

    const DatasetRow& at(Compound compound, Compartment compartment, double t) const {
        auto it = index_.find({t, compound, compartment});
        if (it == index_.end()) {
            throw DatasetError("no dataset row for (" + to_string(compound) + ", "
                               + to_string(compartment) + ", t=" + csv::format_double(t) + ")");
        }
        return rows_[it->second];
    }

    /// 95% CI band (lo, hi) for an exact key.
    std::pair<double, double> band_at(Compound compound, Compartment compartment, double t) const {
        const DatasetRow& row = at(compound, compartment, t);
        return {row.ci_lo_pct, row.ci_hi_pct};
    }

    /// Sorted distinct measurement times for one compound.
    std::vector<double> times(Compound compound) const {
        std::set<double> ts;
        for (const auto& row : rows_) {
            if (row.compound == compound) {
                ts.insert(row.t);
            }
        }
        return {ts.begin(), ts.end()};
    }

    static DatasetSeries load(std::istream& in) {
        DatasetSeries ds;
        std::string line;
        std::size_t line_no = 0;
        if (!std::getline(in, line)) {
            throw DatasetError("empty dataset: missing header row");
        }
        ++line_no;
        if (std::string(csv::trim(line)) != kDatasetHeader) {
            throw DatasetError("header mismatch: expected '" + std::string(kDatasetHeader)
                               + "', got '" + std::string(csv::trim(line)) + "'");
        }
        while (std::getline(in, line)) {
            ++line_no;
            const std::string_view trimmed = csv::trim(line);
            if (trimmed.empty()) {
                continue;
            }
            const auto fields = csv::split(trimmed, ',');
            if (fields.size() != 6) {
                throw DatasetError("line " + std::to_string(line_no) + ": expected 6 fields, got "
                                   + std::to_string(fields.size()));
            }
            DatasetRow row;
            try {
                row.t = csv::parse_double(csv::trim(fields[0]));
                row.compound = compound_from(csv::trim(fields[1]));
                row.compartment = compartment_from(csv::trim(fields[2]));
                row.mean_pct = csv::parse_double(csv::trim(fields[3]));
                row.ci_lo_pct = csv::parse_double(csv::trim(fields[4]));
                row.ci_hi_pct = csv::parse_double(csv::trim(fields[5]));
            } catch (const std::exception& e) {
                throw DatasetError("line " + std::to_string(line_no) + ": " + e.what());
            }
            validate_row(row, line_no);
            const Key key{row.t, row.compound, row.compartment};
            if (!ds.index_.emplace(key, ds.rows_.size()).second) {
                throw DatasetError("line " + std::to_string(line_no) + ": duplicate key ("
                                   + to_string(row.compound) + ", " + to_string(row.compartment)
                                   + ", t=" + csv::format_double(row.t) + ")");
            }
            ds.rows_.push_back(row);
        }
        ds.check_closure();
        return ds;
    }

    static DatasetSeries load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) {
            throw DatasetError("cannot open dataset file '" + path + "'");
        }
        try {
            return load(in);
        } catch (const DatasetError& e) {
            throw DatasetError(path + ": " + e.what());
        }
    }

    void save(std::ostream& out) const {
        out << kDatasetHeader << '\n';
        for (const auto& row : rows_) {
            out << csv::format_double(row.t) << ',' << to_string(row.compound) << ','
                << to_string(row.compartment) << ',' << csv::format_double(row.mean_pct) << ','
                << csv::format_double(row.ci_lo_pct) << ',' << csv::format_double(row.ci_hi_pct)
                << '\n';
        }
    }

    /// Build a series programmatically (used for solver-generated data);
    /// applies the same validation as load().
    static DatasetSeries from_rows(const std::vector<DatasetRow>& rows) {
        DatasetSeries ds;
        std::size_t line_no = 1;
        for (const auto& row : rows) {
            ++line_no;
            validate_row(row, line_no);
            const Key key{row.t, row.compound, row.compartment};
            if (!ds.index_.emplace(key, ds.rows_.size()).second) {
                throw DatasetError("duplicate key (" + to_string(row.compound) + ", "
                                   + to_string(row.compartment) + ", t="
                                   + csv::format_double(row.t) + ")");
            }
            ds.rows_.push_back(row);
        }
        ds.check_closure();
        return ds;
    }

private:
    static void validate_row(const DatasetRow& row, std::size_t line_no) {
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (!(row.t >= 0.0) || !std::isfinite(row.t)) {
            throw DatasetError(where + "time must be finite and non-negative");
        }
        for (double v : {row.mean_pct, row.ci_lo_pct, row.ci_hi_pct}) {
            if (!std::isfinite(v) || v < 0.0 || v > 100.0) {
                throw DatasetError(where + "percentages must lie in [0, 100]");
            }
        }
        if (!(row.ci_lo_pct <= row.mean_pct && row.mean_pct <= row.ci_hi_pct)) {
            throw DatasetError(where + "CI ordering violated (need ci_lo <= mean <= ci_hi)");
        }
    }

    /// When all four compartments are present at a (t, compound), their means
    /// must account for the whole initial amount up to measurement noise.
    void check_closure() const {
        std::map<std::pair<double, Compound>, std::pair<double, int>> sums;
        for (const auto& row : rows_) {
            auto& [sum, count] = sums[{row.t, row.compound}];
            sum += row.mean_pct;
            ++count;
        }
        for (const auto& [key, sum_count] : sums) {
            const auto& [sum, count] = sum_count;
            if (count == 4 && std::abs(sum - 100.0) > 2.0) {
                throw DatasetError("compartment means for (" + to_string(key.second) + ", t="
                                   + csv::format_double(key.first) + ") sum to "
                                   + csv::format_double(sum) + ", outside 100 +/- 2");
            }
        }
    }

    std::vector<DatasetRow> rows_;
    std::map<Key, std::size_t> index_;
};

}  // namespace leafuptake

#endif  // LEAFUPTAKE_DATASET_HPP
