#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace biocell {

enum class BiocellKind { respiration, photosynthetic };

struct BiocellRecord {
    std::string label;
    BiocellKind kind = BiocellKind::respiration;
    double max_power_density = 0.0;    // mW/cm^2
    double max_current_density = 0.0;  // mA/cm^2
    std::optional<double> voltage_at_max_power;  // V
    std::optional<double> lifetime_hours;
    bool lifetime_is_lower_bound = false;  // e.g. "more than 60 h"
    std::string source;

    bool operator==(const BiocellRecord&) const = default;
};

/// Raised for malformed record CSV. row is 1-based over the file (header = row 1);
/// column is the header name, empty when the problem is not column-specific.
class IngestError : public std::runtime_error {
public:
    IngestError(std::size_t row, std::string column, const std::string& what);

    std::size_t row() const noexcept { return row_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::string column_;
};

inline constexpr std::string_view kRecordHeader =
    "label,kind,max_power_density_mw_cm2,max_current_density_ma_cm2,voltage_v,lifetime_h,"
    "lifetime_is_lower_bound,source";

inline constexpr std::string_view kScatterHeader =
    "series,label,max_current_density_ma_cm2,max_power_density_mw_cm2";

std::string_view kind_name(BiocellKind kind);
std::optional<BiocellKind> parse_kind(std::string_view text);

/// The two built-in respiration-based biocells (PET-nanochannel, SPEEK-fiber).
std::vector<BiocellRecord> builtin_records();

/// Parses the record schema. Columns are matched by header name; all eight must
/// be present. Empty voltage/lifetime fields mean "not reported".
std::vector<BiocellRecord> ingest_records(std::istream& csv);
std::vector<BiocellRecord> ingest_records_file(const std::string& path);

/// Serialises records in the ingest schema (shortest round-trip decimals).
std::string records_csv(const std::vector<BiocellRecord>& records);

struct ScatterSeries {
    BiocellKind kind;
    std::vector<const BiocellRecord*> points;  // input order
};

/// One series per kind present, respiration first. Throws std::invalid_argument
/// for an empty list. Records are neither merged nor deduplicated.
std::vector<ScatterSeries> scatter_series(const std::vector<BiocellRecord>& records);

/// Scatter dataset: x = max current density, y = max power density.
std::string scatter_csv(const std::vector<BiocellRecord>& records);
std::string scatter_svg(const std::vector<BiocellRecord>& records);

}  // namespace biocell
