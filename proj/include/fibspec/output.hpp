#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fibspec {

/// Empty cells (monostate) serialize as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

enum class Format { Csv, Json };

Format parse_format(const std::string& name);

/// %.17g, with non-finite values spelled nan/inf/-inf.
std::string format_double(double v);

std::string render_csv(const Metadata& meta, const Table& table);
std::string render_json(const Metadata& meta, const Table& table);

/// Writes to a sibling temporary file and renames it over path, so a failed
/// run never leaves a partial file behind.
void write_atomic(const std::filesystem::path& path, const std::string& content);

void write_table(const std::filesystem::path& path, Format format, const Metadata& meta,
                 const Table& table);

} // namespace fibspec
