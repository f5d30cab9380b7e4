#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace optinit {

// 17 significant digits: enough for binary64 round trips, so re-parsing a
// CSV reproduces the exact bits that were written.
std::string format_double(double x);

// Minimal CSV emitter: one header row, then numeric rows. Newlines are
// always '\n' so outputs are byte-stable across platforms.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    void row(const std::vector<double>& values);
    void close();

private:
    std::ofstream out_;
    std::size_t width_;
};

}  // namespace optinit
