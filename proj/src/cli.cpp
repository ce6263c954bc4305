#include "schucode/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "schucode/bigint.hpp"
#include "schucode/code.hpp"
#include "schucode/combinat.hpp"
#include "schucode/errors.hpp"
#include "schucode/exterior.hpp"
#include "schucode/gf.hpp"
#include "schucode/schubert.hpp"
#include "schucode/verify.hpp"

namespace schucode::cli {
namespace {

using nlohmann::ordered_json;

// ---------------------------------------------------------------- caps ----

BigInt parse_count(const std::string& text, const std::string& what) {
    if (text.empty()) throw BadInput(what + " must be a positive integer");
    for (char c : text)
        if (c < '0' || c > '9')
            throw BadInput(what + " must be a positive decimal integer, got \"" + text + "\"");
    BigInt v(text);
    if (v <= 0) throw BadInput(what + " must be positive");
    return v;
}

struct Caps {
    BigInt point = BigInt(10000000);  // variety enumeration
    BigInt scan = BigInt(100000000);  // projective weight scan
    BigInt dual = BigInt(1000000);    // dual-Grassmannian scan
};

void apply_env(BigInt& slot, const char* name) {
    if (const char* v = std::getenv(name)) slot = parse_count(v, name);
}

// ---------------------------------------------------- shared CLI options ----

struct CommonOpts {
    std::string alpha_text;
    long q = 0;
    int m = 0; // 0: take the last entry of alpha
    std::string json_path;
    int workers = 1;
    long long seed = 0;
    std::string point_cap_text, scan_cap_text, dual_cap_text;
    bool force = false;

    // default < environment < flag; --force lifts everything out of the way.
    Caps caps() const {
        Caps c;
        apply_env(c.point, "SCHUCODE_POINT_CAP");
        apply_env(c.scan, "SCHUCODE_SCAN_CAP");
        apply_env(c.dual, "SCHUCODE_DUAL_CAP");
        if (!point_cap_text.empty()) c.point = parse_count(point_cap_text, "--point-cap");
        if (!scan_cap_text.empty()) c.scan = parse_count(scan_cap_text, "--scan-cap");
        if (!dual_cap_text.empty()) c.dual = parse_count(dual_cap_text, "--dual-cap");
        if (force) {
            const BigInt huge("1000000000000000000000000000000");
            c.point = huge;
            c.scan = huge;
            c.dual = huge;
        }
        return c;
    }
};

void add_instance_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--alpha", o.alpha_text, "index tuple, comma separated, e.g. 2,4")->required();
    cmd->add_option("--q", o.q, "field order, a prime power")->required();
    cmd->add_option("--m", o.m, "ambient dimension (default: the last entry of alpha)");
}

void add_output_option(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--json", o.json_path, "write the JSON report to this path");
}

void add_cap_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--point-cap", o.point_cap_text,
                    "refuse to enumerate varieties with more points than this (default 10^7)");
    cmd->add_option("--scan-cap", o.scan_cap_text,
                    "refuse weight scans over more projective functionals than this (default 10^8)");
    cmd->add_option("--dual-cap", o.dual_cap_text,
                    "refuse dual-Grassmannian scans over more subspaces than this (default 10^6)");
    cmd->add_flag("--force", o.force, "ignore all caps (runtime becomes your problem)");
}

void add_worker_option(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--workers", o.workers, "worker threads; affects wall time only, never output")
        ->check(CLI::PositiveNumber);
}

// ------------------------------------------------------ shared helpers ----

struct Instance {
    IndexTuple alpha; // reduced: ambient = alpha_l
    int original_m = 0;
    Field field;
};

Instance make_instance(const CommonOpts& o, std::vector<std::string>& notices) {
    IndexTuple raw = parse_tuple(o.alpha_text, o.m);
    Reduction red = reduce(raw);
    if (red.changed)
        notices.push_back("notice: ambient dimension reduced from m = " +
                          std::to_string(red.original_m) + " to m = " +
                          std::to_string(red.alpha.m) +
                          " (dimensions beyond alpha_l contribute nothing)");
    return Instance{red.alpha, red.original_m, Field::from_order(o.q)};
}

ordered_json big_json(const BigInt& v) {
    static const BigInt lo(std::numeric_limits<long long>::min());
    static const BigInt hi(std::numeric_limits<long long>::max());
    if (v >= lo && v <= hi) return v.convert_to<long long>();
    return to_decimal(v);
}

ordered_json field_json(const Field& F) {
    ordered_json j;
    j["p"] = F.p();
    j["e"] = F.e();
    j["q"] = F.q();
    j["modulus"] = F.modulus();
    return j;
}

ordered_json matrix_json(const EchelonMatrix& M) {
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < M.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < M.cols(); ++c) row.push_back(M.at(r, c));
        rows.push_back(std::move(row));
    }
    ordered_json j;
    j["rows"] = std::move(rows);
    j["pivots"] = M.pivots.entries;
    return j;
}

std::string matrix_text(const EchelonMatrix& M) {
    std::ostringstream s;
    for (int r = 0; r < M.rows(); ++r) {
        if (r) s << "; ";
        for (int c = 0; c < M.cols(); ++c) {
            if (c) s << ' ';
            s << M.at(r, c);
        }
    }
    return s.str();
}

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string fmt_q0(double v) {
    std::ostringstream s;
    s << std::setprecision(10) << v;
    return s.str();
}

void fill_instance_json(ordered_json& j, const Instance& inst, long q) {
    j["alpha"] = inst.alpha.entries;
    j["ell"] = inst.alpha.ell();
    j["m"] = inst.alpha.m;
    j["original_m"] = inst.original_m;
    j["q"] = q;
    j["field"] = field_json(inst.field);
}

// ---------------------------------------------------------------- params ----

void run_params(const CommonOpts& o, RunResult& out) {
    Instance inst = make_instance(o, out.notices);
    const IndexTuple& alpha = inst.alpha;
    CountProfile prof = count_profile(alpha, o.q);
    long ka = k_alpha(alpha);
    int dl = delta(alpha);
    BigInt d_claim = ipow(o.q, dl);

    ordered_json j;
    j["command"] = "params";
    fill_instance_json(j, inst, o.q);
    j["k_alpha"] = ka;
    j["delta"] = dl;
    j["d_claim"] = big_json(d_claim);
    j["n_alpha"] = big_json(prof.total);
    j["a"] = prof.a;
    if (alpha.ell() >= 2)
        j["q0"] = q0(alpha.ell());
    else
        j["q0"] = nullptr;
    out.json = dump_json(j);

    std::ostringstream t;
    t << "alpha = (" << alpha.to_string() << "), ell = " << alpha.ell() << ", m = " << alpha.m;
    if (inst.original_m != alpha.m) t << " (reduced from " << inst.original_m << ")";
    t << ", q = " << o.q << "\n";
    t << "field: p = " << inst.field.p() << ", e = " << inst.field.e() << "\n";
    t << "n_alpha = " << to_decimal(prof.total) << "\n";
    t << "k_alpha = " << ka << "\n";
    t << "delta   = " << dl << "\n";
    t << "d claim = q^delta = " << to_decimal(d_claim) << "\n";
    t << "cell profile a_0..a_" << dl << ":";
    for (long long a : prof.a) t << ' ' << a;
    t << "\n";
    if (alpha.ell() >= 2)
        t << "q0(" << alpha.ell() << ") = " << fmt_q0(q0(alpha.ell())) << "\n";
    out.text = t.str();
}

// ------------------------------------------------------------- enumerate ----

struct EnumerateOpts {
    bool cells = false;
    bool strings = false;
};

void run_enumerate(const CommonOpts& o, const EnumerateOpts& e, RunResult& out) {
    Instance inst = make_instance(o, out.notices);
    const IndexTuple& alpha = inst.alpha;
    const Field& F = inst.field;
    Caps caps = o.caps();

    std::vector<IndexTuple> nb = nabla(alpha);
    auto point_json = [&](const EchelonMatrix& M) {
        ordered_json p;
        p["rows"] = matrix_json(M)["rows"];
        p["pivots"] = M.pivots.entries;
        p["plucker"] = plucker_restricted(F, M, nb);
        return p;
    };

    ordered_json j;
    j["command"] = "enumerate";
    fill_instance_json(j, inst, o.q);
    std::ostringstream t;
    long total = 0;

    if (e.cells) {
        j["mode"] = "cells";
        ordered_json cells = ordered_json::array();
        BigInt n = point_count(alpha, o.q);
        if (n > caps.point)
            throw CapExceeded("point count " + to_decimal(n) + " exceeds cap " +
                              to_decimal(caps.point));
        std::ostringstream body;
        for (const IndexTuple& beta : nb) {
            ordered_json cell;
            cell["beta"] = beta.entries;
            cell["dim"] = delta(beta);
            ordered_json pts = ordered_json::array();
            long size = 0;
            body << "# cell " << beta.to_string() << " dim " << delta(beta) << "\n";
            for_each_cell_matrix(F, beta, [&](const EchelonMatrix& M) {
                pts.push_back(point_json(M));
                body << matrix_text(M) << "\n";
                ++size;
            });
            cell["size"] = size;
            cell["points"] = std::move(pts);
            cells.push_back(std::move(cell));
            total += size;
        }
        j["n"] = total;
        j["cells"] = std::move(cells);
        t << "# alpha = (" << alpha.to_string() << "), q = " << o.q << ", n = " << total
          << ", cells = " << nb.size() << "\n"
          << body.str();
    } else if (e.strings) {
        j["mode"] = "strings";
        std::vector<EchelonMatrix> base;
        std::map<StringLabel, std::vector<EchelonMatrix>> fibers;
        for_each_variety_point(F, alpha, caps.point, [&](const EchelonMatrix& M) {
            if (M.pivots.back() == alpha.m)
                fibers[string_projection(M)].push_back(M);
            else
                base.push_back(M);
            ++total;
        });
        ordered_json base_j = ordered_json::array();
        std::ostringstream body;
        body << "# base\n";
        for (const EchelonMatrix& M : base) {
            base_j.push_back(point_json(M));
            body << matrix_text(M) << "\n";
        }
        ordered_json strings_j = ordered_json::array();
        for (const auto& [nu, pts] : fibers) {
            ordered_json s;
            ordered_json nu_j = ordered_json::array();
            std::ostringstream nu_txt;
            for (size_t i = 0; i < nu.size(); ++i) {
                nu_j.push_back(nu[i]);
                if (i) nu_txt << ',';
                nu_txt << nu[i];
            }
            body << "# string " << nu_txt.str() << "\n";
            ordered_json pts_j = ordered_json::array();
            for (const EchelonMatrix& M : pts) {
                pts_j.push_back(point_json(M));
                body << matrix_text(M) << "\n";
            }
            s["nu"] = std::move(nu_j);
            s["size"] = pts.size();
            s["points"] = std::move(pts_j);
            strings_j.push_back(std::move(s));
        }
        j["n"] = total;
        j["base"] = std::move(base_j);
        j["strings"] = std::move(strings_j);
        t << "# alpha = (" << alpha.to_string() << "), q = " << o.q << ", n = " << total
          << ", strings = " << fibers.size() << "\n"
          << body.str();
    } else {
        j["mode"] = "points";
        ordered_json pts = ordered_json::array();
        std::ostringstream body;
        for_each_variety_point(F, alpha, caps.point, [&](const EchelonMatrix& M) {
            pts.push_back(point_json(M));
            body << matrix_text(M) << "\n";
            ++total;
        });
        j["n"] = total;
        j["points"] = std::move(pts);
        t << "# alpha = (" << alpha.to_string() << "), q = " << o.q << ", n = " << total << "\n"
          << body.str();
    }

    out.json = dump_json(j);
    out.text = t.str();
}

// ------------------------------------------------------------------ code ----

struct CodeOpts {
    bool minweight = false;
    bool distribution = false;
    bool mwcc = false;
    bool assert_d = false;
    std::string generator_csv;
};

void run_code(const CommonOpts& o, const CodeOpts& c, const char* command_name, RunResult& out) {
    Instance inst = make_instance(o, out.notices);
    const IndexTuple& alpha = inst.alpha;
    Caps caps = o.caps();

    SchubertCode C = build_code(inst.field, alpha, caps.point);
    int dl = delta(alpha);
    BigInt q_delta = ipow(o.q, dl);

    const bool want_scan = c.minweight || c.distribution || c.mwcc || c.assert_d;
    std::optional<WeightReport> rep;
    if (want_scan) {
        ScanOptions sopt;
        sopt.scan_cap = caps.scan;
        sopt.workers = o.workers;
        sopt.want_distribution = c.distribution;
        sopt.early_exit = !c.distribution;
        rep = c.mwcc ? mwcc_check(C, sopt, caps.dual) : min_weight(C, sopt);
    }

    if (!c.generator_csv.empty()) {
        std::ostringstream csv;
        for (long r = 0; r < C.k; ++r) {
            for (long col = 0; col < C.n; ++col) {
                if (col) csv << ',';
                csv << C.gen_at(r, col);
            }
            csv << '\n';
        }
        out.csv = csv.str();
        out.csv_path = c.generator_csv;
    }

    ordered_json j;
    j["command"] = command_name;
    fill_instance_json(j, inst, o.q);
    j["n"] = C.n;
    j["k"] = C.k;
    j["delta"] = dl;
    j["q_delta"] = big_json(q_delta);
    if (rep) {
        j["d"] = rep->d;
        j["e"] = rep->e;
        j["matches_prediction"] = rep->matches_prediction;
        ordered_json mins = ordered_json::array();
        for (const Minimizer& mz : rep->minimizers) {
            ordered_json mj;
            mj["coeffs"] = mz.coeffs;
            mj["weight"] = mz.weight;
            mj["section"] = format_section(make_section(alpha, mz.coeffs));
            if (mz.schubert_decomposable)
                mj["schubert_decomposable"] = *mz.schubert_decomposable;
            else
                mj["schubert_decomposable"] = nullptr;
            if (mz.witness)
                mj["witness"] = matrix_json(*mz.witness);
            else
                mj["witness"] = nullptr;
            mins.push_back(std::move(mj));
        }
        j["minimizers"] = std::move(mins);
        if (rep->has_distribution) {
            ordered_json dj;
            for (const auto& [w, cnt] : rep->distribution) dj[std::to_string(w)] = cnt;
            j["distribution"] = std::move(dj);
        } else {
            j["distribution"] = nullptr;
        }
        if (rep->mwcc_ran) {
            ordered_json mw;
            mw["counterexamples"] = rep->counterexamples;
            mw["sd_sections"] = rep->sd_sections;
            mw["sd_weight_violations"] = rep->sd_weight_violations;
            j["mwcc"] = std::move(mw);
        } else {
            j["mwcc"] = nullptr;
        }
    } else {
        j["d"] = nullptr;
        j["e"] = nullptr;
        j["matches_prediction"] = nullptr;
        j["minimizers"] = nullptr;
        j["distribution"] = nullptr;
        j["mwcc"] = nullptr;
    }
    out.json = dump_json(j);

    std::ostringstream t;
    t << "Schubert code on alpha = (" << alpha.to_string() << "), m = " << alpha.m << " over F_"
      << o.q << "\n";
    t << "[n, k] = [" << C.n << ", " << C.k << "], predicted d = q^" << dl << " = "
      << to_decimal(q_delta) << "\n";
    if (rep) {
        t << "minimum distance d = " << rep->d
          << (rep->matches_prediction ? " (matches q^delta)" : " (DOES NOT match q^delta)") << "\n";
        t << "e = n - d = " << rep->e << "\n";
        t << "minimizers: " << rep->minimizers.size() << " projective functionals of weight "
          << rep->d << "\n";
        const size_t show = std::min<size_t>(rep->minimizers.size(), 20);
        for (size_t i = 0; i < show; ++i) {
            const Minimizer& mz = rep->minimizers[i];
            t << "  " << format_section(make_section(alpha, mz.coeffs));
            if (mz.schubert_decomposable)
                t << "  (schubert decomposable: " << (*mz.schubert_decomposable ? "yes" : "no")
                  << ")";
            t << "\n";
        }
        if (rep->minimizers.size() > show)
            t << "  ... (" << rep->minimizers.size() - show << " more)\n";
        if (rep->has_distribution) {
            t << "weight distribution (projective counts):\n";
            for (const auto& [w, cnt] : rep->distribution)
                t << "  " << w << ": " << cnt << "\n";
        }
        if (rep->mwcc_ran) {
            t << "mwcc: " << rep->minimizers.size() << " minimizers checked, "
              << rep->counterexamples << " counterexamples; " << rep->sd_sections
              << " schubert-decomposable sections, " << rep->sd_weight_violations
              << " weight violations\n";
        }
    } else {
        t << "(no weight scan requested; pass --minweight)\n";
    }
    out.text = t.str();

    if (c.assert_d && (!rep || !rep->matches_prediction)) out.exit_code = 1;
    if (c.mwcc && rep && (rep->counterexamples > 0 || rep->sd_weight_violations > 0))
        out.exit_code = 1;
}

// ---------------------------------------------------------------- verify ----

struct VerifyCliOpts {
    std::string grid = "default";
    std::string checks;
    std::vector<std::string> alphas;
    std::vector<long> qs;
    int max_m = 0;
    int dc_draws = 100;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            if (!cur.empty()) parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
}

VerifyGrid load_grid_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw BadInput("cannot open grid file: " + path);
    ordered_json doc;
    try {
        f >> doc;
    } catch (const std::exception& ex) {
        throw BadInput("grid file " + path + " is not valid JSON: " + ex.what());
    }
    VerifyGrid g;
    if (doc.contains("instances")) {
        for (const auto& item : doc.at("instances")) {
            std::vector<int> entries = item.at("alpha").get<std::vector<int>>();
            long q = item.at("q").get<long>();
            IndexTuple a = IndexTuple::make(entries, entries.empty() ? 0 : entries.back());
            g.instances.emplace_back(reduce(a).alpha, q);
        }
        if (g.instances.empty()) throw BadInput("grid file lists no instances");
        return g;
    }
    if (doc.contains("ells")) g.ells = doc.at("ells").get<std::vector<int>>();
    if (doc.contains("max_m")) g.max_m = doc.at("max_m").get<int>();
    if (doc.contains("qs")) g.qs = doc.at("qs").get<std::vector<long>>();
    return g;
}

void run_verify(const CommonOpts& o, const VerifyCliOpts& v, RunResult& out) {
    Caps caps = o.caps();

    VerifyGrid grid;
    if (!v.alphas.empty()) {
        if (v.qs.empty()) throw BadInput("--alpha requires at least one --q");
        for (const std::string& a : v.alphas) {
            IndexTuple raw = parse_tuple(a, 0);
            IndexTuple red = reduce(raw).alpha;
            for (long q : v.qs) grid.instances.emplace_back(red, q);
        }
    } else if (v.grid != "default") {
        grid = load_grid_file(v.grid);
    } else {
        if (v.max_m > 0) grid.max_m = v.max_m;
        if (!v.qs.empty()) grid.qs = v.qs;
    }

    VerifyOptions opts;
    if (!v.checks.empty()) opts.families = split_list(v.checks);
    opts.seed = o.seed;
    opts.workers = o.workers;
    opts.point_cap = caps.point;
    opts.scan_cap = caps.scan;
    opts.dc_random_draws = v.dc_draws;

    VerifyReport report = run_verification(grid, opts);

    ordered_json j;
    j["command"] = "verify";
    ordered_json gj;
    if (!grid.instances.empty()) {
        gj["type"] = "explicit";
        ordered_json list = ordered_json::array();
        for (const auto& [a, q] : grid_instances(grid)) {
            ordered_json item;
            item["alpha"] = a.entries;
            item["q"] = q;
            list.push_back(std::move(item));
        }
        gj["instances"] = std::move(list);
    } else {
        gj["type"] = "product";
        gj["ells"] = grid.ells;
        gj["max_m"] = grid.max_m;
        gj["qs"] = grid.qs;
    }
    j["grid"] = std::move(gj);
    j["checks"] = opts.families;
    j["seed"] = opts.seed;
    j["point_cap"] = to_decimal(opts.point_cap);
    j["scan_cap"] = to_decimal(opts.scan_cap);
    ordered_json results = ordered_json::array();
    for (const CheckResult& r : report.results) {
        ordered_json rj;
        rj["check_id"] = r.check_id;
        if (r.alpha.entries.empty())
            rj["alpha"] = nullptr;
        else
            rj["alpha"] = r.alpha.entries;
        if (r.q > 0)
            rj["q"] = r.q;
        else
            rj["q"] = nullptr;
        rj["status"] = to_string(r.status);
        rj["reason"] = r.reason.empty() ? ordered_json(nullptr) : ordered_json(r.reason);
        rj["lhs"] = r.lhs.empty() ? ordered_json(nullptr) : ordered_json(r.lhs);
        rj["rhs"] = r.rhs.empty() ? ordered_json(nullptr) : ordered_json(r.rhs);
        rj["note"] = r.note.empty() ? ordered_json(nullptr) : ordered_json(r.note);
        if (r.seed >= 0)
            rj["seed"] = r.seed;
        else
            rj["seed"] = nullptr;
        results.push_back(std::move(rj));
    }
    j["results"] = std::move(results);
    ordered_json summary;
    summary["passed"] = report.passed;
    summary["failed"] = report.failed;
    summary["skipped"] = report.skipped;
    j["summary"] = std::move(summary);
    out.json = dump_json(j);

    std::ostringstream t;
    for (const CheckResult& r : report.results) {
        std::string inst;
        if (!r.alpha.entries.empty()) inst = "alpha=(" + r.alpha.to_string() + ")";
        if (r.q > 0) inst += (inst.empty() ? "" : " ") + ("q=" + std::to_string(r.q));
        t << std::left << std::setw(5) << to_string(r.status) << ' ' << std::setw(20)
          << r.check_id << ' ' << std::setw(24) << inst;
        if (r.status == CheckStatus::Fail) {
            t << ' ' << r.reason;
            if (!r.lhs.empty()) t << " [lhs=" << r.lhs << " rhs=" << r.rhs << "]";
        } else if (r.status == CheckStatus::Skipped) {
            t << ' ' << r.reason;
        } else if (!r.note.empty()) {
            t << ' ' << r.note;
        }
        t << "\n";
    }
    t << "summary: " << report.passed << " passed, " << report.failed << " failed, "
      << report.skipped << " skipped\n";
    out.text = t.str();

    if (!report.all_passed()) out.exit_code = 1;
}

} // namespace

// ------------------------------------------------------------ dispatcher ----

RunResult run(const std::vector<std::string>& args) {
    RunResult out;

    CLI::App app{"Schubert codes over small finite fields: construction, exhaustive "
                 "minimum-weight search, and identity verification"};
    app.name("schucode");
    app.require_subcommand(1);

    CommonOpts params_o;
    CLI::App* params_cmd =
        app.add_subcommand("params", "closed-form parameters of one code instance");
    add_instance_options(params_cmd, params_o);
    add_output_option(params_cmd, params_o);

    CommonOpts enum_o;
    EnumerateOpts enum_e;
    CLI::App* enum_cmd =
        app.add_subcommand("enumerate", "list the points of a Schubert variety");
    add_instance_options(enum_cmd, enum_o);
    add_output_option(enum_cmd, enum_o);
    add_cap_options(enum_cmd, enum_o);
    CLI::Option* cells_flag =
        enum_cmd->add_flag("--cells", enum_e.cells, "group points by Schubert cell");
    enum_cmd->add_flag("--strings", enum_e.strings, "group points by string fiber")
        ->excludes(cells_flag);

    CommonOpts code_o;
    CodeOpts code_c;
    CLI::App* code_cmd = app.add_subcommand("code", "build a Schubert code and scan its weights");
    add_instance_options(code_cmd, code_o);
    add_output_option(code_cmd, code_o);
    add_cap_options(code_cmd, code_o);
    add_worker_option(code_cmd, code_o);
    code_cmd->add_flag("--minweight", code_c.minweight, "exhaustive minimum-weight scan");
    code_cmd->add_flag("--distribution", code_c.distribution,
                       "full weight distribution (implies --minweight, disables early exit)");
    code_cmd->add_flag("--mwcc", code_c.mwcc,
                       "certify minimum-weight codewords against the Schubert-decomposable "
                       "sections (implies --minweight)");
    code_cmd->add_flag("--assert-d", code_c.assert_d,
                       "exit 1 unless the scanned minimum distance equals q^delta");
    code_cmd->add_flag("--assert-paper", code_c.assert_d)->group(""); // accepted alias
    code_cmd->add_option("--generator-csv", code_c.generator_csv,
                         "write the generator matrix as CSV of field codes");

    CommonOpts verify_o;
    VerifyCliOpts verify_v;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run the identity/inequality suite over a parameter grid");
    verify_cmd->add_option("--grid", verify_v.grid,
                           "\"default\" or a JSON file with {ells,max_m,qs} or {instances}");
    verify_cmd->add_option("--checks", verify_v.checks,
                           "comma list from count,ineq,strings,family,dc,q0 (default: all)");
    verify_cmd->add_option("--alpha", verify_v.alphas,
                           "explicit instance tuple(s); combined with every --q");
    verify_cmd->add_option("--q", verify_v.qs, "field order(s) for the grid or explicit tuples");
    verify_cmd->add_option("--max-m", verify_v.max_m, "largest ambient dimension of the default grid");
    verify_cmd->add_option("--seed", verify_o.seed, "seed for the randomized functional draws");
    verify_cmd->add_option("--dc-draws", verify_v.dc_draws,
                           "random functionals per incidence-bound instance")
        ->check(CLI::NonNegativeNumber);
    add_output_option(verify_cmd, verify_o);
    add_cap_options(verify_cmd, verify_o);
    add_worker_option(verify_cmd, verify_o);

    CommonOpts mwcc_o;
    CLI::App* mwcc_cmd = app.add_subcommand(
        "mwcc", "shorthand for: code --minweight --mwcc");
    add_instance_options(mwcc_cmd, mwcc_o);
    add_output_option(mwcc_cmd, mwcc_o);
    add_cap_options(mwcc_cmd, mwcc_o);
    add_worker_option(mwcc_cmd, mwcc_o);

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("schucode");
        for (const std::string& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        auto subs = app.get_subcommands();
        out.text = subs.empty() ? app.help() : subs.front()->help();
        return out;
    } catch (const CLI::CallForAllHelp&) {
        out.text = app.help("", CLI::AppFormatMode::All);
        return out;
    } catch (const CLI::ParseError& e) {
        out.notices.push_back(std::string("error: ") + e.what());
        out.exit_code = 2;
        return out;
    }

    try {
        if (app.got_subcommand(params_cmd)) {
            run_params(params_o, out);
        } else if (app.got_subcommand(enum_cmd)) {
            run_enumerate(enum_o, enum_e, out);
        } else if (app.got_subcommand(code_cmd)) {
            run_code(code_o, code_c, "code", out);
        } else if (app.got_subcommand(verify_cmd)) {
            run_verify(verify_o, verify_v, out);
        } else if (app.got_subcommand(mwcc_cmd)) {
            CodeOpts forced;
            forced.minweight = true;
            forced.mwcc = true;
            run_code(mwcc_o, forced, "mwcc", out);
        }
        out.json_path = [&] {
            if (app.got_subcommand(params_cmd)) return params_o.json_path;
            if (app.got_subcommand(enum_cmd)) return enum_o.json_path;
            if (app.got_subcommand(code_cmd)) return code_o.json_path;
            if (app.got_subcommand(verify_cmd)) return verify_o.json_path;
            return mwcc_o.json_path;
        }();
    } catch (const BadInput& e) {
        out.notices.push_back(std::string("error: ") + e.what());
        out.exit_code = 2;
    } catch (const CapExceeded& e) {
        out.notices.push_back(std::string("error: ") + e.what() +
                              " (raise the cap or pass --force)");
        out.exit_code = 3;
    } catch (const InternalError& e) {
        out.notices.push_back(std::string("internal error: ") + e.what());
        out.exit_code = 4;
    } catch (const std::exception& e) {
        out.notices.push_back(std::string("internal error: ") + e.what());
        out.exit_code = 4;
    }
    return out;
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

    RunResult r = run(args);
    for (const std::string& n : r.notices) std::cerr << n << "\n";
    if (!r.text.empty()) std::cout << r.text;
    if (!r.json_path.empty() && !r.json.empty()) {
        std::ofstream f(r.json_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << r.json_path << "\n";
            return 2;
        }
        f << r.json;
    }
    if (!r.csv_path.empty() && !r.csv.empty()) {
        std::ofstream f(r.csv_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << r.csv_path << "\n";
            return 2;
        }
        f << r.csv;
    }
    return r.exit_code;
}

} // namespace schucode::cli
