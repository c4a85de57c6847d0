// crquad: exact classification and jet analysis for quadric CR models.
//
// Subcommands: classify, aut, charvar, catalog, harness, random.
// Exit codes: 0 = ran and every requested assertion passed, 1 = ran but an
// assertion failed (degree bound, stabilization, harness violation),
// 2 = input or usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include "crquad/catalog.hpp"
#include "crquad/jet.hpp"
#include "crquad/nondegeneracy.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace crquad;

namespace {

QuadricModel load_model_ref(const std::string& ref) {
    const std::string prefix = "catalog:";
    if (ref.rfind(prefix, 0) == 0) return catalog_entry(ref.substr(prefix.size())).model;
    return load_model_file(ref);
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

std::string dominance_str(Dominance s) {
    switch (s) {
        case Dominance::Dominant: return "dominant";
        case Dominance::NotDominant: return "not dominant";
        default: return "unknown";
    }
}

template <typename T>
std::string vec_str(const std::vector<T>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].str();
    }
    return out + ")";
}

template <typename T>
json vec_json(const std::vector<T>& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(x.str());
    return arr;
}

GaussianRational parse_gaussian(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw ParseError("empty number");
    if (s.back() != 'i') return GaussianRational(Rational::parse(s));
    s.pop_back();
    auto parse_im = [](const std::string& t) {
        if (t.empty() || t == "+") return Rational(1);
        if (t == "-") return Rational(-1);
        return t[0] == '+' ? Rational::parse(t.substr(1)) : Rational::parse(t);
    };
    std::size_t pos = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
            pos = k;
            break;
        }
    if (pos == std::string::npos) return {Rational(0), parse_im(s)};
    return {Rational::parse(s.substr(0, pos)), parse_im(s.substr(pos))};
}

std::vector<GaussianRational> parse_zeta(const std::string& text) {
    std::vector<GaussianRational> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        out.push_back(parse_gaussian(text.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void print_classification(const std::string& ref, const Report& r, bool as_json) {
    if (as_json) {
        json out;
        out["model"] = ref;
        out["n"] = r.n;
        out["d"] = r.d;
        json a;
        a["holds"] = r.independent.holds;
        a["rank"] = r.independent.rank;
        if (r.independent.relation) a["relation"] = vec_json(*r.independent.relation);
        out["independent"] = a;
        json b;
        b["holds"] = r.trivial_kernel.holds;
        b["rank"] = r.trivial_kernel.rank;
        if (r.trivial_kernel.witness) b["witness"] = vec_json(*r.trivial_kernel.witness);
        out["trivial_kernel"] = b;
        out["nondegenerate"] = r.nondegenerate;
        json t;
        t["holds"] = r.tumanov.holds;
        if (r.tumanov.witness) t["witness"] = vec_json(*r.tumanov.witness);
        out["tumanov"] = t;
        out["cone_generating"] = r.cone_generating;
        out["finite_type_two"] = r.finite_type_two;
        json s;
        s["status"] = r.sesqui.status == Dominance::Dominant
                          ? "dominant"
                          : (r.sesqui.status == Dominance::NotDominant ? "not-dominant" : "unknown");
        if (r.sesqui.relation) {
            s["relation"] = r.sesqui.relation->str();
            s["relation_degree"] = r.sesqui.relation_degree;
        }
        s["searched_up_to"] = r.sesqui.searched_up_to;
        out["sesqui"] = s;
        std::cout << out.dump(2) << "\n";
        return;
    }
    std::cout << "model: " << ref << " (n=" << r.n << ", d=" << r.d << ")\n";
    std::cout << "independent (a): " << bool_str(r.independent.holds)
              << "  [rank " << r.independent.rank << "]\n";
    if (r.independent.relation)
        std::cout << "  relation: " << vec_str(*r.independent.relation) << "\n";
    std::cout << "trivial kernel (b): " << bool_str(r.trivial_kernel.holds)
              << "  [rank " << r.trivial_kernel.rank << "]\n";
    if (r.trivial_kernel.witness)
        std::cout << "  kernel witness: " << vec_str(*r.trivial_kernel.witness) << "\n";
    std::cout << "nondegenerate: " << bool_str(r.nondegenerate) << "\n";
    std::cout << "tumanov: " << bool_str(r.tumanov.holds) << "\n";
    if (r.tumanov.witness)
        std::cout << "  tumanov witness: " << vec_str(*r.tumanov.witness) << "\n";
    std::cout << "cone generating: " << bool_str(r.cone_generating) << "\n";
    std::cout << "finite type two: " << bool_str(r.finite_type_two) << "\n";
    std::cout << "sesquilinear image: " << dominance_str(r.sesqui.status)
              << "  [relations searched up to degree " << r.sesqui.searched_up_to << "]\n";
    if (r.sesqui.relation)
        std::cout << "  image relation [degree " << r.sesqui.relation_degree
                  << "]: " << r.sesqui.relation->str() << "\n";
}

int cmd_aut(const std::string& ref, std::size_t cap, const std::string& route_name, bool as_json) {
    QuadricModel m = load_model_ref(ref);
    Route route = route_name == "general" ? Route::General : Route::Direct;
    SolutionSpace prev = solve_jet_system(m, cap - 1, route);
    SolutionSpace sol = solve_jet_system(m, cap, route);

    bool bounds = sol.max_wdeg_f0 <= 1 && sol.max_wdeg_f1 <= 1 && sol.max_wdeg_f2 == 0 &&
                  sol.max_wdeg_g0 <= 2 && sol.max_wdeg_g1 <= 1 && sol.max_weight <= 4 &&
                  !sol.f_has_high_zdeg && !sol.g_has_high_zdeg;
    bool stable = prev.dimension == sol.dimension;

    if (as_json) {
        json out;
        out["model"] = ref;
        out["route"] = route == Route::General ? "general" : "direct";
        out["cap"] = cap;
        out["dimension"] = sol.dimension;
        json deg;
        deg["f0"] = sol.max_wdeg_f0;
        deg["f1"] = sol.max_wdeg_f1;
        deg["f2"] = sol.max_wdeg_f2;
        deg["g0"] = sol.max_wdeg_g0;
        deg["g1"] = sol.max_wdeg_g1;
        deg["max_weight"] = sol.max_weight;
        out["block_degrees"] = deg;
        out["degree_bounds_pass"] = bounds;
        json st;
        st["stable"] = stable;
        st["dimension_at_previous_cap"] = prev.dimension;
        out["stabilization"] = st;
        json basis = json::array();
        for (const auto& pair : sol.basis) {
            json el;
            json fs = json::array(), gs = json::array();
            for (const auto& p : pair.f) fs.push_back(p.str());
            for (const auto& p : pair.g) gs.push_back(p.str());
            el["f"] = fs;
            el["g"] = gs;
            basis.push_back(el);
        }
        out["basis"] = basis;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "model: " << ref << "\n";
        std::cout << "route: " << (route == Route::General ? "general" : "direct") << "\n";
        std::cout << "cap: " << cap << "\n";
        std::cout << "dimension: " << sol.dimension << "\n";
        std::cout << "block w-degrees: f0<=" << sol.max_wdeg_f0 << " f1<=" << sol.max_wdeg_f1
                  << " f2<=" << sol.max_wdeg_f2 << " g0<=" << sol.max_wdeg_g0
                  << " g1<=" << sol.max_wdeg_g1 << ", max weight " << sol.max_weight << "\n";
        std::cout << "degree bounds: " << (bounds ? "pass" : "FAILED") << "\n";
        if (stable)
            std::cout << "stabilization: ok (dimension " << sol.dimension << " at caps "
                      << cap - 1 << " and " << cap << ")\n";
        else
            std::cout << "stabilization: FAILED (dimension grew " << prev.dimension << " -> "
                      << sol.dimension << ")\n";
        std::cout << "basis:\n";
        for (std::size_t i = 0; i < sol.basis.size(); ++i) {
            const auto& pair = sol.basis[i];
            std::cout << "  [" << i + 1 << "] f = (";
            for (std::size_t k = 0; k < pair.f.size(); ++k)
                std::cout << (k ? ", " : "") << pair.f[k].str();
            std::cout << "); g = (";
            for (std::size_t j = 0; j < pair.g.size(); ++j)
                std::cout << (j ? ", " : "") << pair.g[j].str();
            std::cout << ")\n";
        }
    }
    return bounds && stable ? 0 : 1;
}

int cmd_harness(const HarnessConfig& cfg, bool as_json) {
    HarnessResult res = run_harness(cfg);
    if (as_json) {
        json out;
        out["models"] = res.count;
        out["violations"] = res.violations;
        json hyp = json::array();
        for (const auto& [name, held] : res.hypothesis_counts) {
            json h;
            h["implication"] = name;
            h["hypothesis_held"] = held;
            hyp.push_back(h);
        }
        out["hypotheses"] = hyp;
        out["details"] = res.details;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "models: " << res.count << "\n";
        std::cout << "violations: " << res.violations << "\n";
        std::cout << "hypotheses held:\n";
        for (const auto& [name, held] : res.hypothesis_counts)
            std::cout << "  " << name << ": " << held << "\n";
        for (const auto& line : res.details) std::cout << "  ! " << line << "\n";
    }
    return res.violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact nondegeneracy classification and 2-jet rigidity checks for quadric models"};
    app.require_subcommand(1);

    bool as_json = false;
    std::uint64_t seed = 1;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--seed", seed, "seed for randomized commands");

    std::string classify_ref;
    std::size_t relation_degree = 3;
    auto* c_classify = app.add_subcommand("classify", "run every nondegeneracy test on a model");
    c_classify->add_option("model", classify_ref, "model file or catalog:NAME")->required();
    c_classify->add_option("--relation-degree", relation_degree,
                           "max degree searched for image relations")
        ->check(CLI::Range(std::size_t{1}, std::size_t{6}));
    c_classify->fallthrough();

    std::string aut_ref, aut_route = "direct";
    std::size_t aut_cap = 4;
    auto* c_aut = app.add_subcommand("aut", "solve for the infinitesimal automorphism space");
    c_aut->add_option("model", aut_ref, "model file or catalog:NAME")->required();
    c_aut->add_option("--cap", aut_cap, "truncation cap (>= 2)")
        ->check(CLI::Range(std::size_t{2}, std::size_t{12}));
    c_aut->add_option("--route", aut_route, "direct or general")
        ->check(CLI::IsMember({"direct", "general"}));
    c_aut->fallthrough();

    std::string charvar_ref, zeta_text;
    auto* c_charvar = app.add_subcommand("charvar", "test a direction against the symbol system");
    c_charvar->add_option("model", charvar_ref, "model file or catalog:NAME")->required();
    c_charvar->add_option("--zeta", zeta_text, "comma-separated components, e.g. \"1,0,1/2+1/3i\"")
        ->required();
    c_charvar->fallthrough();

    auto* c_catalog = app.add_subcommand("catalog", "built-in example models");
    auto* c_list = c_catalog->add_subcommand("list", "list catalog entries");
    std::string show_name;
    auto* c_show = c_catalog->add_subcommand("show", "print one entry as a model file");
    c_show->add_option("name", show_name, "entry name")->required();
    c_catalog->require_subcommand(1);
    c_catalog->fallthrough();
    c_list->fallthrough();
    c_show->fallthrough();

    HarnessConfig hcfg;
    auto* c_harness = app.add_subcommand("harness", "re-check the implication suite on random models");
    c_harness->add_option("--count", hcfg.count, "number of models")->check(CLI::PositiveNumber);
    c_harness->add_option("--n-min", hcfg.n_min, "min coordinate dimension");
    c_harness->add_option("--n-max", hcfg.n_max, "max coordinate dimension");
    c_harness->add_option("--d-min", hcfg.d_min, "min codimension");
    c_harness->add_option("--d-max", hcfg.d_max, "max codimension");
    c_harness->add_option("--bound", hcfg.bound, "entry bound")->check(CLI::PositiveNumber);
    c_harness->fallthrough();

    std::size_t rand_n = 2, rand_d = 2;
    long rand_bound = 2;
    auto* c_random = app.add_subcommand("random", "emit a random model file");
    c_random->add_option("--n", rand_n, "coordinate dimension")->check(CLI::PositiveNumber);
    c_random->add_option("--d", rand_d, "codimension")->check(CLI::PositiveNumber);
    c_random->add_option("--bound", rand_bound, "entry bound")->check(CLI::PositiveNumber);
    c_random->fallthrough();

    try {
        app.parse(argc, argv);

        if (*c_classify) {
            Report r = classify(load_model_ref(classify_ref), relation_degree);
            print_classification(classify_ref, r, as_json);
            return 0;
        }
        if (*c_aut) return cmd_aut(aut_ref, aut_cap, aut_route, as_json);
        if (*c_charvar) {
            QuadricModel m = load_model_ref(charvar_ref);
            bool ch = char_variety_test(m, parse_zeta(zeta_text));
            if (as_json) {
                json out;
                out["model"] = charvar_ref;
                out["zeta"] = zeta_text;
                out["characteristic"] = ch;
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << (ch ? "characteristic" : "non-characteristic") << "\n";
            }
            return 0;
        }
        if (*c_list) {
            if (as_json) {
                json out = json::array();
                for (const auto& e : catalog()) {
                    json el;
                    el["name"] = e.name;
                    el["summary"] = e.summary;
                    out.push_back(el);
                }
                std::cout << out.dump(2) << "\n";
            } else {
                for (const auto& e : catalog())
                    std::cout << e.name << "\n    " << e.summary << "\n";
            }
            return 0;
        }
        if (*c_show) {
            const CatalogEntry& e = catalog_entry(show_name);
            if (as_json) {
                json out;
                out["name"] = e.name;
                out["summary"] = e.summary;
                out["model"] = json::parse(model_to_json_text(e.model));
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << model_to_json_text(e.model) << "\n";
            }
            return 0;
        }
        if (*c_harness) {
            hcfg.seed = seed;
            return cmd_harness(hcfg, as_json);
        }
        if (*c_random) {
            std::cout << model_to_json_text(random_model(rand_n, rand_d, rand_bound, seed)) << "\n";
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::logic_error& e) {
        // classify()'s internal cross-checks: a bug, not bad input
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
