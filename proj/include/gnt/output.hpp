// output.hpp — deterministic CSV/JSON formatting ('.' decimal, scientific
// notation with 12 significant digits)

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace gnt {

// 12 significant digits, scientific, locale-independent.
inline std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return std::string(buf);
}

class CsvWriter {
public:
    void header(const std::vector<std::string>& columns) { line(columns); }

    void row(const std::vector<std::string>& cells) { line(cells); }

    std::string cell(double v) const { return format_sci(v); }

    std::string str() const { return out_.str(); }

private:
    void line(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    std::ostringstream out_;
};

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
    if (!f) throw std::runtime_error("failed writing output file: " + path);
}

inline std::string dump_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

} // namespace gnt
