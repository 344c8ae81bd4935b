#include "symderiv/fixtures.hpp"

#include "symderiv/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef SYMDERIV_FIXTURES_DIR
#define SYMDERIV_FIXTURES_DIR "fixtures"
#endif

namespace symderiv {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw Error("not a number: '" + s + "'");
    q.canonicalize();
    return q;
}

std::vector<std::string> read_lines(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error("cannot open " + file.string());
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        out.push_back(line);
    }
    return out;
}

}  // namespace

std::filesystem::path default_fixtures_dir() {
    if (const char* env = std::getenv("SYMDERIV_FIXTURES"); env && *env) return env;
    return SYMDERIV_FIXTURES_DIR;
}

FixtureFile FixtureFile::load(const std::filesystem::path& file) {
    FixtureFile f;
    f.path_ = file;
    for (const auto& line : read_lines(file)) {
        auto colon = line.find(':');
        if (colon == std::string::npos) throw Error(file.string() + ": expected 'key: value' in '" + line + "'");
        f.values_[trim(line.substr(0, colon))] = trim(line.substr(colon + 1));
    }
    return f;
}

const std::string& FixtureFile::text(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw IndexError(path_.string() + ": missing key '" + key + "'");
    return it->second;
}

std::vector<mpq_class> FixtureFile::numbers(const std::string& key) const {
    std::vector<mpq_class> out;
    for (const auto& t : split_ws(text(key))) out.push_back(parse_rational(t));
    return out;
}

mpq_class FixtureFile::number(const std::string& key) const {
    auto v = numbers(key);
    if (v.size() != 1) throw Error(path_.string() + ": '" + key + "' is not a single number");
    return v[0];
}

std::vector<int> FixtureFile::integers(const std::string& key) const {
    std::vector<int> out;
    for (const auto& t : split_ws(text(key))) out.push_back(std::stoi(t));
    return out;
}

std::vector<ChordDiagram> FixtureFile::diagrams(const std::string& key) const {
    std::vector<ChordDiagram> out;
    std::string cur;
    int depth = 0;
    for (char c : text(key)) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth == 0 && (c == ' ' || c == '\t')) {
            if (!cur.empty()) out.push_back(ChordDiagram::parse(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(ChordDiagram::parse(cur));
    return out;
}

Partition parse_partition(const std::string& s) {
    std::string body = s;
    if (!body.empty() && body.front() == '[') body.erase(body.begin());
    if (!body.empty() && body.back() == ']') body.pop_back();
    std::vector<int> parts;
    std::istringstream in(body);
    for (std::string t; std::getline(in, t, ',');) {
        t = trim(t);
        if (!t.empty()) parts.push_back(std::stoi(t));
    }
    return Partition(parts);
}

std::vector<NamedChordVector> load_chord_vectors(const std::filesystem::path& file, int points) {
    std::vector<NamedChordVector> out;
    const auto count = diagram_count(points);
    for (const auto& line : read_lines(file)) {
        auto tok = split_ws(line);
        if (tok.size() != count + 2)
            throw DimensionMismatch(file.string() + ": expected " + std::to_string(count) + " coefficients for " + tok[0]);
        std::vector<mpq_class> values;
        for (std::size_t i = 2; i < tok.size(); ++i) values.push_back(parse_rational(tok[i]));
        out.push_back({tok[0], parse_partition(tok[1]), ChordVector::from_dense(points, values)});
    }
    return out;
}

std::vector<OrthogonalRow> load_orthogonal_rows(const std::filesystem::path& file) {
    std::vector<OrthogonalRow> out;
    for (const auto& line : read_lines(file)) {
        auto tok = split_ws(line);
        if (tok.size() < 3) throw Error(file.string() + ": short row '" + line + "'");
        OrthogonalRow row;
        row.two_k = std::stoi(tok[0]);
        row.genus = std::stoi(tok[1]);
        row.cumulative = mpz_class(tok[2]);
        for (std::size_t i = 3; i < tok.size(); ++i) {
            auto br = tok[i].find('[');
            if (br == std::string::npos) throw Error(file.string() + ": bad block '" + tok[i] + "'");
            row.blocks.emplace_back(mpz_class(tok[i].substr(0, br)), parse_partition(tok[i].substr(br)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace symderiv
