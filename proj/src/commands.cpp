#include "orbimorse/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>

#include "orbimorse/error.hpp"

#ifndef ORBIMORSE_CORPUS_DIR
#define ORBIMORSE_CORPUS_DIR "corpus"
#endif

namespace orbimorse {

namespace fs = std::filesystem;

namespace {

std::string format_betti(const std::vector<std::size_t>& b) {
    std::string s = "(";
    for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
    return s + ")";
}

std::string pass(bool ok) { return ok ? "pass" : "FAIL"; }

Report failure_report(std::string command, std::string instance, const Error& e) {
    Report r{std::move(command), std::move(instance)};
    r.status = status_for(e.code());
    r.notes.push_back(e.what());
    return r;
}

/// Loads the instance and runs body on it; library errors become reports.
Report guarded(const std::string& command, const fs::path& path,
               const std::function<Report(const Instance&)>& body) {
    std::string name = path.filename().string();
    try {
        const auto inst = load_instance(path);
        name = inst.name;
        return body(inst);
    } catch (const Error& e) {
        return failure_report(command, name, e);
    }
}

Table laws_table(const ValidationReport& v) {
    Table t{"laws", {"law", "result", "witness"}, {}};
    for (const auto& l : v.laws) t.rows.push_back({l.law, pass(l.ok), l.witness ? l.witness->detail : ""});
    return t;
}

Table orbit_table(const EquivariantMorseSystem& s) {
    Table t{"orbits", {"orbit", "index", "iso_order", "orientable", "reversing"}, {}};
    for (const auto& o : classify(s)) {
        std::string label;
        for (auto m : o.members) label += (label.empty() ? "" : "+") + s.crit_points()[m].label;
        t.rows.push_back({label, std::to_string(o.index), std::to_string(o.iso_order), o.orientable ? "yes" : "no",
                          std::to_string(o.reversing)});
    }
    return t;
}

std::string d_squared_detail(const DSquaredReport& d) {
    if (d.ok) return "";
    const auto& w = *d.witness;
    return std::string(to_string(w.convention)) + ": coefficient of " + w.target + " in dd(" + w.source + ") is " +
           to_string(w.value);
}

struct TriangulationSummary {
    std::vector<std::size_t> betti;
    std::vector<std::size_t> quotient_betti;
    std::vector<std::size_t> invariant_betti;
    std::size_t subdivisions = 0;
};

TriangulationSummary summarize(const Triangulation& t) {
    TriangulationSummary out;
    const auto gk = t.g_complex();
    const auto sub = t.sub();
    if (sub) require_invariant_subcomplex(gk, *sub);
    out.betti = homology(gk.complex(), sub);
    const auto r = regularize(gk, sub);
    out.subdivisions = r.subdivisions;
    if (r.sub) {
        const auto [q, ql] = quotient(r.complex, *r.sub);
        out.quotient_betti = homology(q.complex, ql);
    } else {
        out.quotient_betti = homology(quotient(r.complex).complex);
    }
    out.invariant_betti = invariant_homology(r.complex, r.sub);
    return out;
}

void add_triangulation_laws(Table& laws, const Triangulation& t, const std::string& prefix) {
    try {
        const auto k = t.complex();
        laws.rows.push_back({prefix + "complex", "pass", std::to_string(k.dimension()) + "-dimensional, " +
                                                             std::to_string(k.vertex_count()) + " vertices"});
    } catch (const Error& e) {
        laws.rows.push_back({prefix + "complex", "FAIL", e.what()});
        return;
    }
    std::optional<GSimplicialComplex> gk;
    try {
        gk = t.g_complex();
        laws.rows.push_back({prefix + "action_simplicial", "pass", "|G| = " + std::to_string(gk->group().size())});
    } catch (const Error& e) {
        laws.rows.push_back({prefix + "action_simplicial", "FAIL", e.what()});
        return;
    }
    if (const auto sub = t.sub()) {
        try {
            require_invariant_subcomplex(*gk, *sub);
            laws.rows.push_back({prefix + "subcomplex", "pass", ""});
        } catch (const Error& e) {
            laws.rows.push_back({prefix + "subcomplex", "FAIL", e.what()});
        }
    }
    const bool regular = is_regular(*gk) && quotient_is_simplicial(*gk);
    laws.rows.push_back({prefix + "regular", "pass", regular ? "quotient is simplicial as given" : "regularized by subdivision"});
}

void add_expectation(Table& checks, Report& r, const std::string& name, const std::optional<std::vector<std::size_t>>& want,
                     const std::vector<std::size_t>& got) {
    if (!want) return;
    const bool ok = same_betti(*want, got);
    checks.rows.push_back({name, pass(ok), "expected " + format_betti(*want) + ", got " + format_betti(got)});
    if (!ok) r.degrade(Status::Mismatch);
}

void add_boundaries(Report& r, const GradedComplex& c) {
    for (std::size_t k = 1; k <= c.max_degree(); ++k)
        r.tables.push_back(matrix_table("boundary_" + std::to_string(k), c.boundary[k], c.labels[k - 1], c.labels[k]));
}

/// Homology through the intrinsic pipeline, shared by both Morse kinds.
void intrinsic_homology(Report& r, Table& checks, const OrbifoldMorseSystem& s, Convention convention,
                        const Expectations& expect) {
    const auto c = boundary_complex(s, convention);
    add_boundaries(r, c);
    const auto d2 = verify_d_squared(s);
    checks.rows.push_back({"d_squared", pass(d2.ok), d_squared_detail(d2)});
    if (!d2.ok) {
        r.degrade(Status::Mismatch);
        return;
    }
    const auto b = betti(c);
    r.tables.push_back(betti_table(b));
    add_expectation(checks, r, "expect.betti", expect.betti, b);
}

}  // namespace

fs::path default_corpus_dir() {
    if (const char* env = std::getenv("ORBIMORSE_CORPUS_DIR"); env && *env) return env;
    return ORBIMORSE_CORPUS_DIR;
}

fs::path resolve_instance(const fs::path& path, const fs::path& corpus_dir) {
    if (fs::exists(path)) return path;
    if (path.has_parent_path()) return path;
    if (fs::exists(corpus_dir / path)) return corpus_dir / path;
    auto with_ext = corpus_dir / path;
    with_ext += ".json";
    if (fs::exists(with_ext)) return with_ext;
    return path;
}

Report validate_instance(const Instance& inst) {
    Report r{"validate", inst.name};
    Table laws{"laws", {"law", "result", "witness"}, {}};
    if (inst.global) {
        const auto v = validate_system(*inst.global);
        laws = laws_table(v);
        if (inst.kind == InstanceKind::Comparison)
            for (auto& row : laws.rows) row[0] = "morse." + row[0];
        if (!v.ok()) r.degrade(Status::Invalid);
    }
    if (inst.intrinsic) {
        const auto issues = validate_intrinsic(*inst.intrinsic);
        for (const auto& i : issues) laws.rows.push_back({i.law, "FAIL", i.witness});
        if (issues.empty()) {
            laws.rows.push_back({"structure", "pass", ""});
            const auto d2 = verify_d_squared(*inst.intrinsic);
            laws.rows.push_back({"d_squared", pass(d2.ok), d_squared_detail(d2)});
            if (!d2.ok) r.degrade(Status::Invalid);
        } else {
            r.degrade(Status::Invalid);
        }
    }
    if (inst.triangulation) {
        add_triangulation_laws(laws, *inst.triangulation,
                               inst.kind == InstanceKind::Comparison ? "triangulation." : "");
        for (const auto& row : laws.rows)
            if (row[1] == "FAIL") r.degrade(Status::Invalid);
    }
    r.tables.push_back(std::move(laws));
    if (inst.global && r.status == Status::Ok) r.tables.push_back(orbit_table(*inst.global));
    return r;
}

Report homology_instance(const Instance& inst, Convention convention) {
    Report r{"homology", inst.name};
    r.notes.push_back("convention: " + std::string(to_string(convention)));
    Table checks{"checks", {"check", "result", "detail"}, {}};
    if (inst.global) {
        const auto v = validate_system(*inst.global);
        if (!v.ok()) {
            r.degrade(Status::Invalid);
            r.tables.push_back(laws_table(v));
            return r;
        }
        const auto derived = derive_intrinsic(*inst.global);
        intrinsic_homology(r, checks, derived, convention, inst.expect);
        if (r.status == Status::Ok) {
            const auto direct = betti(invariant_boundary(*inst.global));
            const bool ok = same_betti(direct, betti(boundary_plus(derived)));
            checks.rows.push_back({"invariant_subcomplex", pass(ok), format_betti(direct)});
            if (!ok) r.degrade(Status::Mismatch);
        }
    } else if (inst.intrinsic) {
        const auto issues = validate_intrinsic(*inst.intrinsic);
        if (!issues.empty()) {
            Table laws{"laws", {"law", "result", "witness"}, {}};
            for (const auto& i : issues) laws.rows.push_back({i.law, "FAIL", i.witness});
            r.tables.push_back(std::move(laws));
            r.degrade(Status::Invalid);
            return r;
        }
        intrinsic_homology(r, checks, *inst.intrinsic, convention, inst.expect);
    } else {
        const auto summary = summarize(*inst.triangulation);
        r.tables.push_back(betti_table(summary.betti));
        Table q{"quotient", {"degree", "quotient_betti", "invariant_betti"}, {}};
        for (std::size_t k = 0; k < std::max(summary.quotient_betti.size(), summary.invariant_betti.size()); ++k)
            q.rows.push_back({std::to_string(k),
                              std::to_string(k < summary.quotient_betti.size() ? summary.quotient_betti[k] : 0),
                              std::to_string(k < summary.invariant_betti.size() ? summary.invariant_betti[k] : 0)});
        r.tables.push_back(std::move(q));
        r.notes.push_back("subdivisions: " + std::to_string(summary.subdivisions));
        add_expectation(checks, r, "expect.betti", inst.expect.betti, summary.betti);
        add_expectation(checks, r, "expect.quotient_betti", inst.expect.quotient_betti, summary.quotient_betti);
    }
    r.tables.push_back(std::move(checks));
    return r;
}

Report compare_instance(const Instance& inst) {
    Report r{"compare", inst.name};
    if (inst.kind != InstanceKind::Comparison) {
        r.degrade(Status::Invalid);
        r.notes.push_back("compare needs a comparison instance, got " + std::string(to_string(inst.kind)));
        return r;
    }
    const auto v = validate_system(*inst.global);
    if (!v.ok()) {
        r.degrade(Status::Invalid);
        r.tables.push_back(laws_table(v));
        return r;
    }
    const auto cmp = compare(*inst.global, inst.triangulation->g_complex());
    r.notes.push_back("subdivisions: " + std::to_string(cmp.subdivisions));
    Table t{"betti", {"degree", "morse", "simplicial"}, {}};
    for (std::size_t k = 0; k < std::max(cmp.morse.size(), cmp.simplicial.size()); ++k)
        t.rows.push_back({std::to_string(k), std::to_string(k < cmp.morse.size() ? cmp.morse[k] : 0),
                          std::to_string(k < cmp.simplicial.size() ? cmp.simplicial[k] : 0)});
    r.tables.push_back(std::move(t));
    Table checks{"checks", {"check", "result", "detail"}, {}};
    checks.rows.push_back({"verdict", cmp.equal ? "equal" : "DIFFERENT",
                           format_betti(cmp.morse) + " vs " + format_betti(cmp.simplicial)});
    if (!cmp.equal) r.degrade(Status::Mismatch);
    add_expectation(checks, r, "expect.quotient_betti", inst.expect.quotient_betti, cmp.simplicial);
    r.tables.push_back(std::move(checks));
    return r;
}

Report cmd_validate(const fs::path& path) { return guarded("validate", path, validate_instance); }

Report cmd_homology(const fs::path& path, Convention convention) {
    return guarded("homology", path, [&](const Instance& inst) { return homology_instance(inst, convention); });
}

Report cmd_compare(const fs::path& path) { return guarded("compare", path, compare_instance); }

Report cmd_derive(const fs::path& path, const fs::path& out) {
    return guarded("derive", path, [&](const Instance& inst) {
        Report r{"derive", inst.name};
        if (!inst.global) {
            r.degrade(Status::Invalid);
            r.notes.push_back("derive needs a global_quotient or comparison instance");
            return r;
        }
        const auto v = validate_system(*inst.global);
        if (!v.ok()) {
            r.degrade(Status::Invalid);
            r.tables.push_back(laws_table(v));
            return r;
        }
        const auto s = derive_intrinsic(*inst.global);
        Instance derived;
        derived.kind = InstanceKind::Intrinsic;
        derived.name = inst.name + "_intrinsic";
        derived.description = "intrinsic system of the quotient of " + inst.name;
        derived.expect.betti = inst.expect.betti;
        derived.intrinsic = s;
        save_instance(derived, out);
        r.notes.push_back("wrote " + out.filename().string());

        Table points{"points", {"label", "index", "iso_order", "orientable"}, {}};
        for (const auto& p : s.crit_points)
            points.rows.push_back({p.label, std::to_string(p.index), std::to_string(p.iso_order),
                                   p.orientable ? "yes" : "no"});
        Table flows{"flows", {"label", "src", "dst", "iso_order", "sign"}, {}};
        for (const auto& f : s.flows)
            flows.rows.push_back({f.label, s.crit_points[f.src].label, s.crit_points[f.dst].label,
                                  std::to_string(f.iso_order), std::to_string(f.sign)});
        Table weights{"incidence", {"source", "target", "n_plus", "n_minus"}, {}};
        for (std::size_t p = 0; p < s.crit_points.size(); ++p)
            for (std::size_t q = 0; q < s.crit_points.size(); ++q) {
                const auto& P = s.crit_points[p];
                const auto& Q = s.crit_points[q];
                if (!P.orientable || !Q.orientable || P.index != Q.index + 1) continue;
                weights.rows.push_back({P.label, Q.label, to_string(incidence(s, p, q, Convention::Plus)),
                                          to_string(incidence(s, p, q, Convention::Minus))});
            }
        r.tables.push_back(std::move(points));
        r.tables.push_back(std::move(flows));
        r.tables.push_back(std::move(weights));
        return r;
    });
}

std::vector<fs::path> corpus_files(const fs::path& corpus_dir) {
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(corpus_dir, ec))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    if (ec) throw Error(ErrorCode::IoError, "cannot list " + corpus_dir.string());
    std::sort(files.begin(), files.end());
    return files;
}

Report cmd_corpus_list(const fs::path& corpus_dir) {
    Report r{"corpus list", corpus_dir.filename().string()};
    try {
        Table t{"instances", {"file", "name", "kind", "description"}, {}};
        for (const auto& f : corpus_files(corpus_dir)) {
            try {
                const auto inst = load_instance(f);
                t.rows.push_back({f.filename().string(), inst.name, std::string(to_string(inst.kind)), inst.description});
            } catch (const Error& e) {
                t.rows.push_back({f.filename().string(), "", "", e.what()});
                r.degrade(status_for(e.code()));
            }
        }
        r.tables.push_back(std::move(t));
    } catch (const Error& e) {
        return failure_report("corpus list", corpus_dir.string(), e);
    }
    return r;
}

Report cmd_corpus_run(const fs::path& corpus_dir, const std::optional<std::string>& filter) {
    Report r{"corpus run", filter.value_or("all")};
    try {
        Table t{"results", {"instance", "check", "result", "detail"}, {}};
        std::size_t matched = 0;
        for (const auto& f : corpus_files(corpus_dir)) {
            if (filter && f.stem().string() != *filter && f.filename().string() != *filter) continue;
            ++matched;
            std::vector<CheckOutcome> outcomes;
            std::string name = f.stem().string();
            try {
                const auto inst = load_instance(f);
                name = inst.name;
                outcomes = check_instance(inst);
            } catch (const Error& e) {
                outcomes.push_back({"load", false, e.what()});
            }
            for (const auto& o : outcomes) {
                t.rows.push_back({name, o.check, pass(o.ok), o.detail});
                if (!o.ok) r.degrade(Status::Mismatch);
            }
        }
        if (matched == 0) {
            r.degrade(Status::IoError);
            r.notes.push_back("no corpus instance matches " + filter.value_or("*"));
        }
        r.notes.push_back("instances: " + std::to_string(matched));
        r.tables.push_back(std::move(t));
    } catch (const Error& e) {
        return failure_report("corpus run", corpus_dir.string(), e);
    }
    return r;
}

std::vector<CheckOutcome> check_instance(const Instance& inst) {
    std::vector<CheckOutcome> out;
    auto check = [&](const std::string& name, const std::function<CheckOutcome()>& fn) {
        try {
            auto o = fn();
            o.check = name;
            out.push_back(std::move(o));
        } catch (const Error& e) {
            out.push_back({name, false, e.what()});
        }
        return out.back().ok;
    };
    auto expect_betti = [&](const std::string& name, const std::optional<std::vector<std::size_t>>& want,
                            const std::vector<std::size_t>& got) {
        if (!want) return;
        out.push_back({name, same_betti(*want, got), "expected " + format_betti(*want) + ", got " + format_betti(got)});
    };
    auto intrinsic_checks = [&](const OrbifoldMorseSystem& s, std::size_t n) {
        check("psi_chain_map", [&] {
            const bool ok = verify_chain_map(psi(s)).ok;
            const auto plus = betti(boundary_plus(s));
            const auto minus = betti(boundary_minus(s));
            return CheckOutcome{"", ok && plus == minus, "plus " + format_betti(plus) + ", minus " + format_betti(minus)};
        });
        check("pairing", [&] {
            const auto p = pairing_check(s, n);
            return CheckOutcome{"", p.ok, std::to_string(p.pairs_checked) + " pairs"};
        });
    };

    if (inst.global) {
        const auto& g = *inst.global;
        const bool want_valid = inst.expect.valid.value_or(true);
        const bool valid = validate_system(g).ok();
        out.push_back({"validate", valid == want_valid, valid ? "all laws hold" : "validation fails"});
        if (valid) {
            std::optional<OrbifoldMorseSystem> derived;
            check("derive", [&] {
                derived = derive_intrinsic(g);
                return CheckOutcome{"", true, std::to_string(derived->crit_points.size()) + " orbits"};
            });
            if (derived) {
                check("invariant_subcomplex", [&] {
                    const auto inv = invariant_boundary(g);
                    const auto plus = boundary_plus(*derived);
                    bool ok = inv.labels.size() == plus.labels.size();
                    for (std::size_t k = 0; ok && k < inv.boundary.size(); ++k) ok = inv.boundary[k] == plus.boundary[k];
                    return CheckOutcome{"", ok, "betti " + format_betti(betti(inv))};
                });
                check("d_squared", [&] {
                    const auto d2 = verify_d_squared(*derived);
                    return CheckOutcome{"", d2.ok, d_squared_detail(d2)};
                });
                intrinsic_checks(*derived, g.ambient_dim());
                check("broken_weights", [&] {
                    const auto rows = broken_weight_table(g);
                    std::map<std::pair<std::size_t, std::size_t>, Rational> sums;
                    for (const auto& row : rows) sums[{row.p, row.r}] += row.weight;
                    bool ok = true;
                    for (const auto& [_, v] : sums) ok = ok && v == 0;
                    return CheckOutcome{"", ok, std::to_string(rows.size()) + " triples"};
                });
                expect_betti("expect.betti", inst.expect.betti, betti(boundary_plus(*derived)));
            }
        }
    }
    if (inst.intrinsic) {
        const auto& s = *inst.intrinsic;
        const bool want_valid = inst.expect.valid.value_or(true);
        const bool structural = validate_intrinsic(s).empty();
        const bool valid = structural && verify_d_squared(s).ok;
        out.push_back({"validate", valid == want_valid, valid ? "structure and d_squared hold" : "validation fails"});
        if (valid) {
            intrinsic_checks(s, s.ambient_dim);
            expect_betti("expect.betti", inst.expect.betti, betti(boundary_plus(s)));
        }
    }
    if (inst.triangulation) {
        std::optional<TriangulationSummary> summary;
        check("triangulation", [&] {
            summary = summarize(*inst.triangulation);
            return CheckOutcome{"", true, "subdivisions " + std::to_string(summary->subdivisions)};
        });
        if (summary) {
            out.push_back({"invariant_vs_quotient", summary->invariant_betti == summary->quotient_betti,
                           format_betti(summary->invariant_betti) + " vs " + format_betti(summary->quotient_betti)});
            if (inst.kind == InstanceKind::Simplicial) expect_betti("expect.betti", inst.expect.betti, summary->betti);
            expect_betti("expect.quotient_betti", inst.expect.quotient_betti, summary->quotient_betti);
        }
    }
    if (inst.kind == InstanceKind::Comparison && inst.global && validate_system(*inst.global).ok()) {
        check("compare", [&] {
            const auto cmp = compare(*inst.global, inst.triangulation->g_complex());
            return CheckOutcome{"", cmp.equal, format_betti(cmp.morse) + " vs " + format_betti(cmp.simplicial)};
        });
    }
    return out;
}

}  // namespace orbimorse
