#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "evospread/harness.hpp"
#include "json.hpp"

namespace evospread {

enum class Format { Csv, Json, Svg };
Format parse_format(const std::string& text);

inline constexpr const char* kCsvHeader =
    "axis,mean_T,stderr_T,ci_lo_T,ci_hi_T,mean_J,stderr_J,ci_lo_J,ci_hi_J,replications,master_seed";

void write_csv(std::ostream& out, const SweepTable& table);
void write_csv(std::ostream& out, const ExperimentResult& result);

nlohmann::json to_json(const ExperimentResult& result);
nlohmann::json to_json(const SweepTable& table);

struct Curve {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct SeriesPoint {
    double x = 0.0;
    double y = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

struct Series {
    std::string name;
    std::vector<SeriesPoint> points;
};

/// Mean T with its 90% interval against the axis value.
Series series_from(const SweepTable& table, const std::string& name);

struct Plot {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<Series> series;
    std::vector<Curve> curves;
};

void write_svg(std::ostream& out, const Plot& plot);

/// Writes the table in the given format. Throws IoError.
void emit(const SweepTable& table, Format format, const std::string& path, const std::vector<Curve>& curves = {});

void write_text_file(const std::string& path, const std::string& content);

}  // namespace evospread
