#include "lamsim/csv.hpp"

#include <cstdio>
#include <fstream>

#include "lamsim/errors.hpp"

namespace lamsim {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path) : impl_(new Impl) {
    impl_->out.open(path, std::ios::binary);  // '\n' line endings everywhere
    if (!impl_->out) {
        delete impl_;
        fail("IoError", "cannot open '" + path + "' for writing");
    }
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::comment(const std::string& text) { impl_->out << "# " << text << "\n"; }

void CsvWriter::header(const std::string& columns) { impl_->out << columns << "\n"; }

void CsvWriter::row(const std::vector<double>& values) {
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) impl_->out << ",";
        impl_->out << format_double(values[i]);
    }
    impl_->out << "\n";
}

void CsvWriter::raw_row(const std::string& line) { impl_->out << line << "\n"; }

}  // namespace lamsim
