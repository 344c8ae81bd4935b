// Command-line front end: invariant dimension tables, orthogonal
// decompositions, irreducible decompositions and the verification suites.
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include "symderiv/chords.hpp"
#include "symderiv/errors.hpp"
#include "symderiv/fixtures.hpp"
#include "symderiv/partitions.hpp"
#include "symderiv/symfunc.hpp"
#include "symderiv/tables.hpp"
#include "symderiv/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace symderiv;
using nlohmann::ordered_json;

namespace {

enum class Format { text, json, csv };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ordered_json number(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

ordered_json parts(const Partition& la) {
    ordered_json a = ordered_json::array();
    if (la.empty()) a.push_back(0);
    for (int p : la.parts()) a.push_back(p);
    return a;
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

// ---- dims ----------------------------------------------------------------

int run_dims(const std::string& kind_arg, int k_max, const std::string& convention_arg, Format fmt) {
    if (k_max < 2) throw UsageError("--degree must be at least 2");
    if (k_max % 2) throw DegreeParity("Sp-invariant parts vanish in odd degree; use an even --degree");
    DimsConvention conv = parse_convention(convention_arg);
    std::vector<InvariantKind> kinds = kind_arg == "all" ? all_kinds() : std::vector<InvariantKind>{parse_kind(kind_arg)};

    std::vector<int> ks;
    for (int k = 2; k <= k_max; k += 2) ks.push_back(k);
    std::vector<std::vector<mpz_class>> values;
    for (auto kind : kinds) {
        values.emplace_back();
        for (int k : ks) values.back().push_back(invariant_dimension(kind, k, conv));
    }

    if (fmt == Format::json) {
        ordered_json out;
        out["convention"] = convention_name(conv);
        out["degrees"] = ks;
        ordered_json cols = ordered_json::object();
        for (std::size_t i = 0; i < kinds.size(); ++i) {
            ordered_json col = ordered_json::array();
            for (const auto& v : values[i]) col.push_back(number(v));
            cols[kind_name(kinds[i])] = col;
        }
        out["dims"] = cols;
        emit(out);
    } else if (fmt == Format::csv) {
        std::cout << "degree";
        for (auto kind : kinds) std::cout << "," << kind_name(kind);
        std::cout << "\n";
        for (std::size_t r = 0; r < ks.size(); ++r) {
            std::cout << ks[r];
            for (const auto& col : values) std::cout << "," << col[r].get_str();
            std::cout << "\n";
        }
    } else {
        std::cout << "k";
        for (auto kind : kinds) std::cout << "\t" << kind_name(kind);
        std::cout << "\n";
        for (std::size_t r = 0; r < ks.size(); ++r) {
            std::cout << ks[r];
            for (const auto& col : values) std::cout << "\t" << col[r].get_str();
            std::cout << "\n";
        }
    }
    return 0;
}

// ---- ortho ---------------------------------------------------------------

// Genus from which h(2k)^Sp is stable: k for odd k, k - 1 for even k.
int stable_genus(int two_k) {
    int k = two_k / 2;
    return k % 2 ? k : std::max(1, k - 1);
}

int run_ortho(int two_k, const std::string& genus_arg, Format fmt) {
    if (two_k < 2 || two_k % 2) throw DegreeParity("ortho needs a positive even --degree (2k)");
    if (two_k > 20) throw UsageError("ortho is limited to 2k <= 20");
    auto rows = orthogonal_decomposition(two_k);

    std::vector<OrthogonalGenusRow> shown;
    if (genus_arg == "all") {
        shown = rows;
    } else {
        int g = 0;
        if (genus_arg == "stable") {
            g = stable_genus(two_k);
        } else {
            try {
                g = std::stoi(genus_arg);
            } catch (const std::exception&) {
                throw UsageError("--genus expects a positive integer, 'stable' or 'all'");
            }
            if (g < 1) throw UsageError("--genus must be at least 1");
        }
        // Past the last listed row nothing new is admitted.
        OrthogonalGenusRow row;
        row.genus = g;
        for (const auto& r : rows)
            if (r.genus <= g) row.cumulative = r.cumulative;
        for (const auto& r : rows)
            if (r.genus == g) row.blocks = r.blocks;
        shown.push_back(row);
    }

    if (fmt == Format::json) {
        ordered_json out;
        out["degree"] = two_k;
        ordered_json arr = ordered_json::array();
        for (const auto& r : shown) {
            ordered_json jr;
            jr["genus"] = r.genus;
            jr["cumulative"] = number(r.cumulative);
            ordered_json blocks = ordered_json::array();
            for (const auto& b : r.blocks) {
                ordered_json jb;
                jb["partition"] = parts(b.label);
                jb["dim"] = number(b.dim);
                jb["eigenvalue"] = eigenvalue_factored(conjugate(b.label));
                blocks.push_back(jb);
            }
            jr["components"] = blocks;
            arr.push_back(jr);
        }
        out["rows"] = arr;
        emit(out);
    } else if (fmt == Format::csv) {
        std::cout << "degree,genus,cumulative,partition,dim,eigenvalue\n";
        for (const auto& r : shown) {
            if (r.blocks.empty()) std::cout << two_k << "," << r.genus << "," << r.cumulative.get_str() << ",,,\n";
            for (const auto& b : r.blocks)
                std::cout << two_k << "," << r.genus << "," << r.cumulative.get_str() << "," << csv_quote(b.label.str()) << ","
                          << b.dim.get_str() << "," << csv_quote(eigenvalue_factored(conjugate(b.label))) << "\n";
        }
    } else {
        for (const auto& r : shown) {
            std::cout << "g=" << r.genus << "\t" << r.cumulative.get_str() << "\t";
            for (std::size_t i = 0; i < r.blocks.size(); ++i) {
                const auto& b = r.blocks[i];
                if (i) std::cout << " ";
                if (b.dim != 1) std::cout << b.dim.get_str();
                std::cout << b.label.compact() << "^d";
            }
            std::cout << "\n";
        }
    }
    return 0;
}

// ---- projections ---------------------------------------------------------

// Explicit dim F_la on 2k+2 points next to dim H_la' from the character formula.
int run_projections(int two_k, bool large, Format fmt) {
    if (two_k < 2 || two_k % 2) throw DegreeParity("projections needs a positive even --degree (2k)");
    int k = two_k / 2;
    auto dims = derivation_projection_dims(two_k + 2, large);
    if (fmt == Format::json) {
        ordered_json out;
        out["degree"] = two_k;
        ordered_json arr = ordered_json::array();
        for (const auto& la : enumerate_partitions(k + 1)) {
            std::size_t got = dims.count(la) ? dims.at(la) : 0;
            arr.push_back({{"partition", parts(la)}, {"explicit", got}, {"formula", number(dim_H_lambda(conjugate(la), k))}});
        }
        out["components"] = arr;
        emit(out);
    } else {
        const char* sep = fmt == Format::csv ? "," : "\t";
        std::cout << "partition" << sep << "explicit" << sep << "formula\n";
        for (const auto& la : enumerate_partitions(k + 1)) {
            std::size_t got = dims.count(la) ? dims.at(la) : 0;
            std::cout << (fmt == Format::csv ? csv_quote(la.str()) : la.str()) << sep << got << sep
                      << dim_H_lambda(conjugate(la), k).get_str() << "\n";
        }
    }
    return 0;
}

// ---- decompose -----------------------------------------------------------

int run_decompose(const std::string& which, int k, const std::string& basis_arg, bool genus1, bool unbounded, Format fmt) {
    if (k < 1) throw UsageError("degree must be positive");
    if (k > 20 && !unbounded) throw UsageError("degrees above 20 need --unbounded");
    VirtualCharacter c;
    std::string basis;
    if (genus1) {
        if (which != "h") throw UsageError("--genus1 decomposes h only");
        c = genus1_decompose(k);
        basis = "SL2";
    } else {
        Module m = parse_module(which);
        if (basis_arg == "GL") {
            c = module_char(m, k);
        } else if (basis_arg == "Sp") {
            c = sp_decompose(module_char(m, k));
        } else {
            throw UsageError("--basis must be GL or Sp");
        }
        basis = basis_arg;
    }

    if (fmt == Format::json) {
        ordered_json out;
        out["degree"] = k;
        out["basis"] = basis;
        ordered_json terms = ordered_json::array();
        for (const auto& [la, m] : c.terms()) {
            ordered_json t;
            t["partition"] = parts(la);
            t["mult"] = number(m);
            terms.push_back(t);
        }
        out["terms"] = terms;
        emit(out);
    } else if (fmt == Format::csv) {
        std::cout << "degree,partition,mult\n";
        for (const auto& [la, m] : c.terms()) std::cout << k << "," << csv_quote(la.str()) << "," << m.get_str() << "\n";
    } else {
        std::cout << (c.empty() ? "{0}" : c.str()) << "\n";
    }
    return 0;
}

// ---- verify --------------------------------------------------------------

int run_verify(const std::string& suite, const std::filesystem::path& dir, const std::vector<int>& genera, Format fmt) {
    std::vector<std::pair<std::string, Report>> reports;
    auto want = [&](const std::string& s) { return suite == "all" || suite == s; };
    if (suite != "all" && suite != "fixtures7" && suite != "fixtures8" && suite != "properties")
        throw UsageError("suite must be fixtures7, fixtures8, properties or all");
    if (want("fixtures7"))
        for (int g : genera) reports.emplace_back("fixtures7 g=" + std::to_string(g), check_invariant_basis_suite(dir, g));
    if (want("fixtures8")) reports.emplace_back("fixtures8", check_genus1_suite(dir));
    if (want("properties")) {
        reports.emplace_back("stable dimensions", check_stable_dims(dir));
        reports.emplace_back("orthogonal tables", check_orthogonal_tables(dir));
        reports.emplace_back("explicit projections", check_explicit_dims(10));
        reports.emplace_back("unstable slice", check_unstable_slice(dir));
        reports.emplace_back("structural", check_structural(dir));
    }

    bool ok = true;
    for (const auto& [name, r] : reports) ok = ok && r.passed();
    if (fmt == Format::json) {
        ordered_json out;
        out["passed"] = ok;
        ordered_json suites = ordered_json::array();
        for (const auto& [name, r] : reports) {
            ordered_json js;
            js["suite"] = name;
            js["passed"] = r.passed();
            ordered_json checks = ordered_json::array();
            for (const auto& c : r.checks()) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            js["checks"] = checks;
            suites.push_back(js);
        }
        out["suites"] = suites;
        emit(out);
    } else if (fmt == Format::csv) {
        std::cout << "suite,check,passed,detail\n";
        for (const auto& [name, r] : reports)
            for (const auto& c : r.checks())
                std::cout << csv_quote(name) << "," << csv_quote(c.name) << "," << (c.passed ? "true" : "false") << ","
                          << csv_quote(c.detail) << "\n";
    } else {
        for (const auto& [name, r] : reports) {
            std::cout << (r.passed() ? "PASS" : "FAIL") << "  " << name << "\n";
            for (const auto& c : r.checks()) {
                std::cout << "      " << (c.passed ? "ok    " : "FAILED") << " " << c.name;
                if (!c.detail.empty()) std::cout << ": " << c.detail;
                std::cout << "\n";
            }
        }
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symplectic derivation algebra computations"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text", cache_dir, fixtures = default_fixtures_dir().string();
    bool large = false;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--cache-dir", cache_dir, "Persistent character cache directory (default $SYMDERIV_CACHE)");
    app.add_option("--fixtures-dir", fixtures, "Directory with the shipped data files");
    app.add_flag("--large", large, "Allow explicit chord computations on 14 points");

    auto* dims = app.add_subcommand("dims", "Stable dimensions of the Sp-invariant parts");
    std::string kind = "all", convention = "published";
    int dims_degree = 20;
    dims->add_option("--kind", kind, "hSp, jSp, LSp, hgSp, hstarSp or all");
    dims->add_option("--degree", dims_degree, "Largest degree k (even)");
    dims->add_option("--convention", convention, "published or stable");

    auto* ortho = app.add_subcommand("ortho", "Orthogonal decomposition of h(2k)^Sp by genus");
    int ortho_degree = 0;
    std::string ortho_genus = "all";
    ortho->add_option("--degree", ortho_degree, "The even degree 2k")->required();
    ortho->add_option("--genus", ortho_genus, "A genus, 'stable' or 'all'");

    auto* projections = app.add_subcommand("projections", "Explicit chord-space projection dimensions");
    int proj_degree = 0;
    projections->add_option("--degree", proj_degree, "The even degree 2k (2k + 2 <= 12, or 14 with --large)")->required();

    auto* decompose = app.add_subcommand("decompose", "Irreducible decomposition of a module in one degree");
    std::string which, basis = "Sp";
    int dec_degree = 0;
    bool genus1 = false, unbounded = false;
    decompose->add_option("module", which, "h, j, L_g, h_star or h_g")->required();
    decompose->add_option("degree", dec_degree, "Degree k")->required();
    decompose->add_option("--basis", basis, "GL or Sp");
    decompose->add_flag("--genus1", genus1, "SL(2) decomposition of h_{1,1}(k)");
    decompose->add_flag("--unbounded", unbounded, "Allow degrees above 20");

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    std::string suite = "all";
    std::vector<int> genera = {3, 4};
    verify->add_option("suite", suite, "fixtures7, fixtures8, properties or all");
    verify->add_option("--genus", genera, "Genera for the degree-6 fixture suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Format fmt = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;
    if (cache_dir.empty())
        if (const char* env = std::getenv("SYMDERIV_CACHE")) cache_dir = env;
    if (!cache_dir.empty()) set_character_cache_dir(cache_dir);

    int rc = 0;
    try {
        if (*dims) rc = run_dims(kind, dims_degree, convention, fmt);
        else if (*ortho) rc = run_ortho(ortho_degree, ortho_genus, fmt);
        else if (*projections) rc = run_projections(proj_degree, large, fmt);
        else if (*decompose) rc = run_decompose(which, dec_degree, basis, genus1, unbounded, fmt);
        else if (*verify) rc = run_verify(suite, fixtures, genera, fmt);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DegreeParity& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const SizePolicy& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (!cache_dir.empty()) flush_character_cache();
    return rc;
}
