#pragma once

#include "pnev/geometry.hpp"
#include "pnev/nevanlinna.hpp"
#include "pnev/series.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pnev {

struct SharpnessSpec {
    std::size_t n = 0;
    unsigned d = 0;
    friend bool operator==(const SharpnessSpec&, const SharpnessSpec&) = default;
};

// One problem instance. Every number is an exact fraction.
struct Scenario {
    long p = 0;
    std::size_t N = 0;
    std::optional<VarietySpec> variety;  // absent: X = P^N
    std::vector<EntireSeries> map;
    std::vector<Hypersurface> hypersurfaces;
    unsigned M = 1;
    std::vector<ProjectivePoint> witness_points;
    std::vector<Rational> s_grid;
    std::optional<SharpnessSpec> sharpness;
    // Artifact file names, relative to the output directory.
    std::string report_path = "report.txt";
    std::string dump_path = "dump.txt";
    std::string table_path = "table.tsv";

    VarietySpec variety_or_space() const { return variety ? *variety : VarietySpec::projective_space(N); }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Parses a scenario document (YAML; JSON documents are accepted too). Throws
// InputError naming the first offending field and its line/column.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario_file(const std::string& path);

// Canonical document that parse_scenario reads back to an equal Scenario.
std::string emit_scenario(const Scenario& s);

// The scenario of a generated sharpness configuration.
Scenario scenario_from_sharpness(const SharpnessConfig& cfg, std::vector<Rational> s_grid);

}  // namespace pnev
