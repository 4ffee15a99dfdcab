#ifndef TCONIC_DATA_IO_HPP
#define TCONIC_DATA_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>
#include <stdexcept>

#include "tconic/multipoly.hpp"

namespace tconic {

// one polynomial per line, '#' comments and blank lines skipped
inline std::vector<QPolyN> load_poly_lines(std::istream& in, const std::vector<std::string>& vars) {
    std::vector<QPolyN> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = true;
        for (char ch : line)
            if (!std::isspace((unsigned char)ch)) { blank = false; break; }
        if (blank) continue;
        out.push_back(parse_poly(vars, line));
    }
    return out;
}

inline std::vector<QPolyN> load_poly_file(const std::string& path, const std::vector<std::string>& vars) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open polynomial file: " + path);
    return load_poly_lines(f, vars);
}

// whitespace-separated rationals with '#' comments
inline std::vector<Rat> load_rationals(std::istream& in) {
    std::vector<Rat> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) out.push_back(rat_from_string(tok));
    }
    return out;
}

inline std::vector<Rat> load_rationals_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open spec file: " + path);
    return load_rationals(f);
}

} // namespace tconic

#endif
