// csv.hpp — Deterministic CSV emission

#pragma once

#include <string>
#include <vector>

namespace lamsim {

// Shortest round-trippable representation, identical across runs and worker
// counts for identical inputs.
std::string format_double(double v);

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    ~CsvWriter();

    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void comment(const std::string& text);          // "# text"
    void header(const std::string& columns);        // verbatim header row
    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);

private:
    struct Impl;
    Impl* impl_;
};

}  // namespace lamsim
