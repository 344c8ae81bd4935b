#pragma once

#include "symderiv/chords.hpp"
#include "symderiv/partitions.hpp"

#include <gmpxx.h>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace symderiv {

// Directory holding the shipped data files: $SYMDERIV_FIXTURES when set,
// otherwise the source tree location recorded at build time.
std::filesystem::path default_fixtures_dir();

// "key: value" text file with '#' comments.
class FixtureFile {
public:
    static FixtureFile load(const std::filesystem::path& file);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::string& text(const std::string& key) const;
    std::vector<mpq_class> numbers(const std::string& key) const;
    mpq_class number(const std::string& key) const;
    std::vector<int> integers(const std::string& key) const;
    // Whitespace separated chord diagrams; spaces inside parentheses are kept.
    std::vector<ChordDiagram> diagrams(const std::string& key) const;

private:
    std::filesystem::path path_;
    std::map<std::string, std::string> values_;
};

// "[3,1,1]" or "3,1,1".
Partition parse_partition(const std::string& s);

struct NamedChordVector {
    std::string name;
    Partition label;
    ChordVector vector;
};
// Lines "name [label] c_1 ... c_N" with N = (n-1)!! coefficients.
std::vector<NamedChordVector> load_chord_vectors(const std::filesystem::path& file, int points);

struct OrthogonalRow {
    int two_k = 0;
    int genus = 0;
    mpz_class cumulative;
    std::vector<std::pair<mpz_class, Partition>> blocks;  // (dim H_lambda, lambda)
};
// Lines "2k g cumulative m[la] m[la] ...".
std::vector<OrthogonalRow> load_orthogonal_rows(const std::filesystem::path& file);

}  // namespace symderiv
