#include "biocell/compare.hpp"

#include "biocell/io/csv.hpp"
#include "biocell/io/svg.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace biocell {

namespace {

constexpr std::array<std::string_view, 8> kColumns = {
    "label", "kind", "max_power_density_mw_cm2", "max_current_density_ma_cm2",
    "voltage_v", "lifetime_h", "lifetime_is_lower_bound", "source"};

std::string optional_number(const std::optional<double>& v) {
    return v ? io::format_double(*v) : std::string();
}

}  // namespace

IngestError::IngestError(std::size_t row, std::string column, const std::string& what)
    : std::runtime_error("row " + std::to_string(row) + (column.empty() ? "" : ", column '" + column + "'") +
                         ": " + what),
      row_(row), column_(std::move(column)) {}

std::string_view kind_name(BiocellKind kind) {
    return kind == BiocellKind::respiration ? "respiration" : "photosynthetic";
}

std::optional<BiocellKind> parse_kind(std::string_view text) {
    if (text == "respiration") return BiocellKind::respiration;
    if (text == "photosynthetic") return BiocellKind::photosynthetic;
    return std::nullopt;
}

std::vector<BiocellRecord> builtin_records() {
    BiocellRecord pet;
    pet.label = "PET-nanochannel biocell";
    pet.kind = BiocellKind::respiration;
    pet.max_power_density = 0.91;
    pet.max_current_density = 3.1;
    pet.voltage_at_max_power = 0.35;
    pet.lifetime_hours = 60.0;
    pet.lifetime_is_lower_bound = true;  // "exceeding 60 hours"
    pet.source = "Zhang et al. 2017, PET nanochannel mitochondrial biocell";

    BiocellRecord speek;
    speek.label = "SPEEK-fiber biocell";
    speek.kind = BiocellKind::respiration;
    speek.max_power_density = 1.21;
    speek.max_current_density = 6.42;
    speek.lifetime_hours = 192.0;  // 8 days
    speek.source = "Wang et al. 2024, SPEEK fiber-network biocell";
    return {pet, speek};
}

std::vector<BiocellRecord> ingest_records(std::istream& csv) {
    std::vector<std::vector<std::string>> rows;
    try {
        rows = io::read_rows(csv);
    } catch (const std::runtime_error& e) {
        throw IngestError(0, "", e.what());
    }
    if (rows.empty()) throw IngestError(1, "", "missing header");

    const auto& header = rows.front();
    std::array<std::size_t, kColumns.size()> index{};
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
        std::size_t found = header.size();
        for (std::size_t h = 0; h < header.size(); ++h) {
            if (header[h] == kColumns[c]) found = h;
        }
        if (found == header.size()) throw IngestError(1, std::string(kColumns[c]), "missing required column");
        index[c] = found;
    }

    std::vector<BiocellRecord> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const std::size_t row_no = r + 1;
        const auto& row = rows[r];
        if (row.size() != header.size()) {
            throw IngestError(row_no, "", "expected " + std::to_string(header.size()) + " fields, found " +
                                              std::to_string(row.size()));
        }
        auto field = [&](std::size_t c) -> const std::string& { return row[index[c]]; };
        auto number = [&](std::size_t c, bool required) -> std::optional<double> {
            const std::string& text = field(c);
            if (text.empty()) {
                if (required) throw IngestError(row_no, std::string(kColumns[c]), "value required");
                return std::nullopt;
            }
            auto v = io::parse_double(text);
            if (!v || !std::isfinite(*v)) {
                throw IngestError(row_no, std::string(kColumns[c]), "not a number: '" + text + "'");
            }
            return v;
        };

        BiocellRecord rec;
        rec.label = field(0);
        auto kind = parse_kind(field(1));
        if (!kind) {
            throw IngestError(row_no, "kind", "unknown kind '" + field(1) + "' (expected respiration or photosynthetic)");
        }
        rec.kind = *kind;
        rec.max_power_density = *number(2, true);
        if (!(rec.max_power_density > 0.0)) throw IngestError(row_no, std::string(kColumns[2]), "must be > 0");
        rec.max_current_density = *number(3, true);
        if (!(rec.max_current_density > 0.0)) throw IngestError(row_no, std::string(kColumns[3]), "must be > 0");
        rec.voltage_at_max_power = number(4, false);
        rec.lifetime_hours = number(5, false);
        if (rec.lifetime_hours && *rec.lifetime_hours < 0.0) {
            throw IngestError(row_no, std::string(kColumns[5]), "must be >= 0");
        }
        const std::string& flag = field(6);
        if (flag == "true" || flag == "1") {
            rec.lifetime_is_lower_bound = true;
        } else if (flag == "false" || flag == "0" || flag.empty()) {
            rec.lifetime_is_lower_bound = false;
        } else {
            throw IngestError(row_no, std::string(kColumns[6]), "expected true or false, found '" + flag + "'");
        }
        rec.source = field(7);
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<BiocellRecord> ingest_records_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    try {
        return ingest_records(in);
    } catch (const IngestError& e) {
        throw IngestError(e.row(), e.column(), std::string(e.what()) + " in '" + path + "'");
    }
}

std::string records_csv(const std::vector<BiocellRecord>& records) {
    std::string out(kRecordHeader);
    out += '\n';
    for (const auto& r : records) {
        out += io::join_row({r.label, std::string(kind_name(r.kind)), io::format_double(r.max_power_density),
                             io::format_double(r.max_current_density), optional_number(r.voltage_at_max_power),
                             optional_number(r.lifetime_hours), r.lifetime_is_lower_bound ? "true" : "false",
                             r.source});
        out += '\n';
    }
    return out;
}

std::vector<ScatterSeries> scatter_series(const std::vector<BiocellRecord>& records) {
    if (records.empty()) throw std::invalid_argument("scatter needs at least one record");
    std::vector<ScatterSeries> series;
    for (BiocellKind kind : {BiocellKind::respiration, BiocellKind::photosynthetic}) {
        ScatterSeries s{kind, {}};
        for (const auto& r : records) {
            if (r.kind == kind) s.points.push_back(&r);
        }
        if (!s.points.empty()) series.push_back(std::move(s));
    }
    return series;
}

std::string scatter_csv(const std::vector<BiocellRecord>& records) {
    std::string out(kScatterHeader);
    out += '\n';
    for (const auto& s : scatter_series(records)) {
        for (const BiocellRecord* r : s.points) {
            out += io::join_row({std::string(kind_name(s.kind)), r->label, io::format_double(r->max_current_density),
                                 io::format_double(r->max_power_density)});
            out += '\n';
        }
    }
    return out;
}

std::string scatter_svg(const std::vector<BiocellRecord>& records) {
    std::vector<io::Series> series;
    for (const auto& s : scatter_series(records)) {
        io::Series out{std::string(kind_name(s.kind)), {}, {}};
        for (const BiocellRecord* r : s.points) {
            out.x.push_back(r->max_current_density);
            out.y.push_back(r->max_power_density);
        }
        series.push_back(std::move(out));
    }
    return io::scatter_svg(series, {"Biocell performance", "max current density (mA/cm^2)",
                                    "max power density (mW/cm^2)"});
}

}  // namespace biocell
