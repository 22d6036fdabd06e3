// Batch front end: series/field/diffeo documents in, flows, generators,
// Gevrey diagnostics and bound reports out. Exit codes: 0 pass, 1 a
// mathematical check failed, 2 usage or input trouble.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "liegen/bounds.hpp"
#include "liegen/document.hpp"

namespace {

using ojson = nlohmann::ordered_json;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw liegen::document_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;   // serialized documents already end in a newline
    if (!out) throw liegen::document_error("cannot write '" + path + "'");
}

liegen::Document load(const std::string& path) {
    return liegen::parse_document(slurp(path));
}

liegen::VectorField load_field(const std::string& path) {
    liegen::Document doc = load(path);
    if (auto* X = std::get_if<liegen::VectorField>(&doc)) return std::move(*X);
    throw liegen::document_error("'" + path + "' is not a field document");
}

liegen::Diffeo load_diffeo(const std::string& path) {
    liegen::Document doc = load(path);
    if (auto* F = std::get_if<liegen::Diffeo>(&doc)) return std::move(*F);
    throw liegen::document_error("'" + path + "' is not a diffeo document");
}

// Component list of any document kind; diffeos contribute their displacement.
std::vector<liegen::Series> components_of(const liegen::Document& doc) {
    if (auto* f = std::get_if<liegen::Series>(&doc)) return {*f};
    if (auto* X = std::get_if<liegen::VectorField>(&doc)) return X->components();
    return std::get<liegen::Diffeo>(doc).displacements();
}

void emit(bool as_json, const ojson& j, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << '\n';
    else
        std::cout << text << '\n';
}

ojson report_json(const char* command, const liegen::BoundsReport& rep) {
    ojson j;
    j["command"] = command;
    j["name"] = rep.name;
    j["range"] = rep.range;
    j["precondition_ok"] = rep.precondition_ok;
    j["passed"] = rep.passed;
    j["checks"] = rep.margins.checks;
    if (rep.margins.checks > 0) {
        j["min_margin"] = rep.margins.min_margin;
        j["max_margin"] = rep.margins.max_margin;
        j["min_at"] = rep.margins.min_at;
    }
    if (!rep.note.empty()) j["note"] = rep.note;
    ojson v = ojson::array();
    for (const auto& x : rep.violations)
        v.push_back(ojson{{"where", x.where}, {"lhs", x.lhs}, {"rhs", x.rhs}});
    j["violations"] = std::move(v);
    return j;
}

void print_report_text(const liegen::BoundsReport& rep) {
    std::cout << rep.name << " [" << rep.range << "]\n";
    if (!rep.precondition_ok) {
        std::cout << "  " << rep.note << "\nPRECONDITION FAILED\n";
        return;
    }
    std::cout << "  checks: " << rep.margins.checks;
    if (rep.margins.checks > 0)
        std::cout << "  min margin: " << rep.margins.min_margin << " at " << rep.margins.min_at;
    std::cout << '\n';
    if (!rep.note.empty()) std::cout << "  " << rep.note << '\n';
    std::size_t shown = 0;
    for (const auto& v : rep.violations) {
        if (shown == 10) {
            std::cout << "  ... and " << rep.violations.size() - shown << " more\n";
            break;
        }
        std::cout << "  violation " << v.where << ": " << v.lhs << " > " << v.rhs << '\n';
        ++shown;
    }
    std::cout << (rep.passed ? "PASS" : "FAIL") << '\n';
}

int finish_report(const char* command, const liegen::BoundsReport& rep, bool as_json) {
    if (as_json)
        std::cout << report_json(command, rep).dump(2) << '\n';
    else
        print_report_text(rep);
    if (!rep.precondition_ok) return 2;
    return rep.passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"formal flows tangent to the identity: exponentials, generators, "
                 "Gevrey diagnostics and quantitative bound verification"};
    app.require_subcommand(1);
    // global flags (--json, --digits, --seed) may appear after the subcommand
    struct FallthroughAll {
        static void apply(CLI::App* a) {
            a->fallthrough();
            for (auto* sub : a->get_subcommands([](const CLI::App*) { return true; })) apply(sub);
        }
    };

    bool as_json = false;
    long seed = 0;
    int digits = 50;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--seed", seed, "accepted for interface compatibility; controls nothing");
    app.add_option("--digits", digits, "significant digits for numeric checks (default 50)");

    std::function<int()> action;

    // ---- exp ----------------------------------------------------------
    std::string exp_in, exp_out;
    int exp_trunc = 0;
    auto* c_exp = app.add_subcommand("exp", "time-1 flow of a field, written as a diffeo document");
    c_exp->add_option("--in", exp_in, "field document")->required();
    c_exp->add_option("--trunc", exp_trunc, "truncation degree")->required();
    c_exp->add_option("--out", exp_out, "output diffeo document")->required();
    c_exp->callback([&] {
        action = [&]() -> int {
            liegen::VectorField X = load_field(exp_in);
            if (X.trunc() > exp_trunc) X = truncate(X, exp_trunc);
            liegen::Diffeo F = liegen::exp_field(X, exp_trunc);
            spill(exp_out, liegen::serialize_document(F));
            emit(as_json, ojson{{"command", "exp"}, {"out", exp_out}, {"trunc", exp_trunc}},
                 "wrote diffeo " + exp_out);
            return 0;
        };
    });

    // ---- log ----------------------------------------------------------
    std::string log_in, log_out;
    int log_trunc = 0;
    auto* c_log = app.add_subcommand("log", "infinitesimal generator of a diffeo, written as a field document");
    c_log->add_option("--in", log_in, "diffeo document")->required();
    c_log->add_option("--trunc", log_trunc, "truncation degree")->required();
    c_log->add_option("--out", log_out, "output field document")->required();
    c_log->callback([&] {
        action = [&]() -> int {
            liegen::Diffeo F = load_diffeo(log_in);
            if (F.trunc() > log_trunc) F = truncate(F, log_trunc);
            liegen::VectorField X = liegen::log_diffeo(F, log_trunc);
            spill(log_out, liegen::serialize_document(X));
            emit(as_json, ojson{{"command", "log"}, {"out", log_out}, {"trunc", log_trunc}},
                 "wrote field " + log_out);
            return 0;
        };
    });

    // ---- roundtrip ----------------------------------------------------
    std::string rt_in;
    int rt_trunc = 0;
    auto* c_rt = app.add_subcommand("roundtrip", "flow of the generator (or generator of the flow) must return the input exactly");
    c_rt->add_option("--in", rt_in, "field or diffeo document")->required();
    c_rt->add_option("--trunc", rt_trunc, "truncation degree")->required();
    c_rt->callback([&] {
        action = [&]() -> int {
            liegen::Document doc = load(rt_in);
            bool pass = false;
            const char* kind = nullptr;
            if (auto* X = std::get_if<liegen::VectorField>(&doc)) {
                kind = "field";
                liegen::VectorField Xt = X->trunc() > rt_trunc ? truncate(*X, rt_trunc) : *X;
                pass = liegen::log_diffeo(liegen::exp_field(Xt, rt_trunc), rt_trunc) ==
                       truncate(Xt, rt_trunc);
            } else if (auto* F = std::get_if<liegen::Diffeo>(&doc)) {
                kind = "diffeo";
                liegen::Diffeo Ft = F->trunc() > rt_trunc ? truncate(*F, rt_trunc) : *F;
                pass = liegen::exp_field(liegen::log_diffeo(Ft, rt_trunc), rt_trunc) ==
                       truncate(Ft, rt_trunc);
            } else {
                throw liegen::document_error("roundtrip needs a field or diffeo document");
            }
            emit(as_json,
                 ojson{{"command", "roundtrip"}, {"kind", kind}, {"trunc", rt_trunc}, {"passed", pass}},
                 std::string("roundtrip (") + kind + ", trunc " + std::to_string(rt_trunc) + "): " +
                     (pass ? "PASS" : "FAIL"));
            return pass ? 0 : 1;
        };
    });

    // ---- compose ------------------------------------------------------
    std::string cp_f, cp_g, cp_out;
    auto* c_cp = app.add_subcommand("compose", "composition F after G of two diffeos");
    c_cp->add_option("--f", cp_f, "outer diffeo document")->required();
    c_cp->add_option("--g", cp_g, "inner diffeo document")->required();
    c_cp->add_option("--out", cp_out, "output diffeo document")->required();
    c_cp->callback([&] {
        action = [&]() -> int {
            liegen::Diffeo H = liegen::compose(load_diffeo(cp_f), load_diffeo(cp_g));
            spill(cp_out, liegen::serialize_document(H));
            emit(as_json, ojson{{"command", "compose"}, {"out", cp_out}, {"trunc", H.trunc()}},
                 "wrote diffeo " + cp_out);
            return 0;
        };
    });

    // ---- conjugate ----------------------------------------------------
    std::string cj_in, cj_out, cj_lambda;
    auto* c_cj = app.add_subcommand("conjugate", "scaling conjugation L^-1 . F . L with L = lambda*id");
    c_cj->add_option("--in", cj_in, "field or diffeo document")->required();
    c_cj->add_option("--lambda", cj_lambda, "nonzero rational scale")->required();
    c_cj->add_option("--out", cj_out, "output document (same kind)")->required();
    c_cj->callback([&] {
        action = [&]() -> int {
            const liegen::Rational lam = liegen::rational_from_string(cj_lambda);
            liegen::Document doc = load(cj_in);
            if (auto* X = std::get_if<liegen::VectorField>(&doc)) {
                spill(cj_out, liegen::serialize_document(liegen::scale_conjugate(*X, lam)));
            } else if (auto* F = std::get_if<liegen::Diffeo>(&doc)) {
                spill(cj_out, liegen::serialize_document(liegen::scale_conjugate(*F, lam)));
            } else {
                throw liegen::document_error("conjugate needs a field or diffeo document");
            }
            emit(as_json, ojson{{"command", "conjugate"}, {"out", cj_out}, {"lambda", cj_lambda}},
                 "wrote " + cj_out);
            return 0;
        };
    });

    // ---- gevrey -------------------------------------------------------
    auto* c_gv = app.add_subcommand("gevrey", "coefficient-growth diagnostics");
    c_gv->require_subcommand(1);

    std::string fit_in;
    int fit_qmin = 0, fit_qmax = 0;
    auto* c_fit = c_gv->add_subcommand("fit", "least-squares growth exponent and radius estimate");
    c_fit->add_option("--in", fit_in, "document (any kind)")->required();
    c_fit->add_option("--qmin", fit_qmin, "lowest degree used")->required();
    c_fit->add_option("--qmax", fit_qmax, "highest degree used")->required();
    c_fit->callback([&] {
        action = [&]() -> int {
            liegen::FitResult fit = liegen::gevrey_fit(components_of(load(fit_in)), fit_qmin, fit_qmax);
            std::ostringstream os;
            os << "s_hat = " << fit.s_hat << "  a_hat = " << fit.a_hat
               << "  residual = " << fit.residual << "  (degrees " << fit.q_lo << ".." << fit.q_hi
               << ", " << fit.degrees_used << " used)";
            emit(as_json,
                 ojson{{"command", "gevrey-fit"},
                       {"s_hat", fit.s_hat},
                       {"a_hat", fit.a_hat},
                       {"residual", fit.residual},
                       {"q_lo", fit.q_lo},
                       {"q_hi", fit.q_hi},
                       {"degrees_used", fit.degrees_used}},
                 os.str());
            return 0;
        };
    });

    std::string gc_in, gc_s, gc_a;
    int gc_n = 0;
    auto* c_gc = c_gv->add_subcommand("check", "exact coefficient-wise domination test");
    c_gc->add_option("--in", gc_in, "document (any kind)")->required();
    c_gc->add_option("--s", gc_s, "growth exponent, rational num[/den]")->required();
    c_gc->add_option("--a", gc_a, "radius parameter, rational num[/den]")->required();
    c_gc->add_option("--n", gc_n, "declared minimum order (>= 2)")->required();
    c_gc->callback([&] {
        action = [&]() -> int {
            const std::vector<liegen::Series> comps = components_of(load(gc_in));
            const liegen::GevreyParams P(liegen::rational_from_string(gc_s),
                                         liegen::rational_from_string(gc_a),
                                         comps.front().vars(), gc_n);
            bool all = true;
            ojson per = ojson::array();
            std::ostringstream os;
            for (std::size_t i = 0; i < comps.size(); ++i) {
                const bool ok = liegen::gevrey_dominated(comps[i], P);
                all = all && ok;
                per.push_back(ok);
                if (i) os << '\n';
                os << "component " << i << ": " << (ok ? "dominated" : "NOT dominated");
            }
            os << '\n' << (all ? "PASS" : "FAIL");
            emit(as_json,
                 ojson{{"command", "gevrey-check"}, {"passed", all}, {"components", std::move(per)}},
                 os.str());
            return all ? 0 : 1;
        };
    });

    std::string gr_in, gr_s;
    int gr_n = 0;
    auto* c_gr = c_gv->add_subcommand("radius", "least dominating radius over all components");
    c_gr->add_option("--in", gr_in, "document (any kind)")->required();
    c_gr->add_option("--s", gr_s, "growth exponent, rational num[/den]")->required();
    c_gr->add_option("--n", gr_n, "declared minimum order (>= 2)")->required();
    c_gr->callback([&] {
        action = [&]() -> int {
            const std::vector<liegen::Series> comps = components_of(load(gr_in));
            const liegen::Rational s = liegen::rational_from_string(gr_s);
            liegen::Rational best = 0;
            for (std::size_t i = 0; i < comps.size(); ++i) {
                auto r = liegen::find_gevrey_radius(comps[i], s, gr_n);
                if (!r)
                    throw liegen::domain_error("component " + std::to_string(i) +
                                               " has terms below the declared order; no radius exists");
                if (*r > best) best = *r;
            }
            emit(as_json,
                 ojson{{"command", "gevrey-radius"},
                       {"radius", liegen::rational_to_string(best)},
                       {"approx", best.get_d()}},
                 "radius = " + liegen::rational_to_string(best) + " (~" +
                     std::to_string(best.get_d()) + ")");
            return 0;
        };
    });

    // ---- bounds -------------------------------------------------------
    auto* c_bd = app.add_subcommand("bounds", "closed constants and lemma-scale sweeps");
    c_bd->require_subcommand(1);

    std::string th_y;
    int th_m = 0, th_n = 0;
    auto* c_th = c_bd->add_subcommand("theta", "tail-summed envelope series at a rational argument");
    c_th->add_option("--y", th_y, "argument in (0,1), rational num[/den]")->required();
    c_th->add_option("--m", th_m, "variable count")->required();
    c_th->add_option("--n", th_n, "minimum order")->required();
    c_th->callback([&] {
        action = [&]() -> int {
            const liegen::PrecisionConfig pc{digits, 1e-40};
            const liegen::Rational y = liegen::rational_from_string(th_y);
            const liegen::Interval iv = liegen::theta_sum(
                liegen::Interval::from_rational(y, liegen::bits_for(pc)), th_m, th_n, pc);
            const liegen::Rational exact = liegen::theta_exact(y, th_m, th_n);
            emit(as_json,
                 ojson{{"command", "bounds-theta"},
                       {"value", liegen::to_string(iv, digits)},
                       {"enclosure", {iv.lo_double(), iv.hi_double()}},
                       {"exact", liegen::rational_to_string(exact)}},
                 "theta = " + liegen::to_string(iv, digits) + "  (exact " +
                     liegen::rational_to_string(exact) + ")");
            return 0;
        };
    });

    int cm_m = 0, cm_n = 0;
    auto* c_cm = c_bd->add_subcommand("cmn", "exact sup ratio max{1/2, m/(m+n-1)}");
    c_cm->add_option("--m", cm_m, "variable count")->required();
    c_cm->add_option("--n", cm_n, "minimum order")->required();
    c_cm->callback([&] {
        action = [&]() -> int {
            const liegen::Rational c = liegen::c_mn(cm_m, cm_n);
            emit(as_json,
                 ojson{{"command", "bounds-cmn"},
                       {"value", liegen::rational_to_string(c)},
                       {"approx", c.get_d()}},
                 "c = " + liegen::rational_to_string(c));
            return 0;
        };
    });

    std::string bq_s;
    int bq_m = 0, bq_n = 0;
    long bq_q = 0;
    auto* c_bq = c_bd->add_subcommand("bq", "one coefficient-sum term of the power estimate");
    c_bq->add_option("--m", bq_m, "variable count")->required();
    c_bq->add_option("--n", bq_n, "minimum order")->required();
    c_bq->add_option("--s", bq_s, "growth exponent, rational num[/den]")->required();
    c_bq->add_option("--q", bq_q, "degree (>= 2n-1)")->required();
    c_bq->callback([&] {
        action = [&]() -> int {
            const liegen::PrecisionConfig pc{digits, 1e-40};
            const liegen::Rational s = liegen::rational_from_string(bq_s);
            const liegen::Interval iv = liegen::b_q_enclosure(bq_m, bq_n, s, bq_q, pc);
            ojson j{{"command", "bounds-bq"},
                    {"value", liegen::to_string(iv, digits)},
                    {"enclosure", {iv.lo_double(), iv.hi_double()}}};
            std::string text = "b_q = " + liegen::to_string(iv, digits);
            if (liegen::is_integer(s) && s > 0) {
                const liegen::Rational ex = liegen::b_q_exact(bq_m, bq_n, s, bq_q);
                j["exact"] = liegen::rational_to_string(ex);
                text += "  (exact " + liegen::rational_to_string(ex) + ")";
            }
            emit(as_json, j, text);
            return 0;
        };
    });

    std::string ac_s;
    int ac_m = 0, ac_n = 0;
    auto* c_ac = c_bd->add_subcommand("aconst", "iterated-power constant");
    c_ac->add_option("--m", ac_m, "variable count")->required();
    c_ac->add_option("--n", ac_n, "minimum order")->required();
    c_ac->add_option("--s", ac_s, "growth exponent, rational num[/den], > 0")->required();
    c_ac->callback([&] {
        action = [&]() -> int {
            const liegen::PrecisionConfig pc{digits, 1e-40};
            const liegen::Rational s = liegen::rational_from_string(ac_s);
            const liegen::Interval iv = liegen::a_const_enclosure(ac_m, ac_n, s, pc);
            ojson j{{"command", "bounds-aconst"},
                    {"value", liegen::to_string(iv, digits)},
                    {"enclosure", {iv.lo_double(), iv.hi_double()}}};
            std::string text = "A = " + liegen::to_string(iv, digits);
            if (liegen::is_integer(s) && s > 0) {
                const liegen::Rational ex = liegen::a_const_exact(ac_m, ac_n, s);
                j["exact"] = liegen::rational_to_string(ex);
                text += "  (exact " + liegen::rational_to_string(ex) + ")";
            }
            emit(as_json, j, text);
            return 0;
        };
    });

    std::string sw_s;
    int sw_m = 0, sw_n = 0;
    long sw_Q = 0;
    auto* c_sw = c_bd->add_subcommand("bq-sweep", "uniform boundedness of the coefficient sums up to a degree cap");
    c_sw->add_option("--m", sw_m, "variable count")->required();
    c_sw->add_option("--n", sw_n, "minimum order")->required();
    c_sw->add_option("--s", sw_s, "growth exponent, rational num[/den]")->required();
    c_sw->add_option("--Q", sw_Q, "degree cap")->required();
    c_sw->callback([&] {
        action = [&]() -> int {
            const liegen::PrecisionConfig pc{digits, 1e-40};
            const liegen::BoundsReport rep =
                liegen::check_bq_bounded(sw_m, sw_n, liegen::rational_from_string(sw_s), sw_Q, pc);
            return finish_report("bounds-bq-sweep", rep, as_json);
        };
    });

    std::string as_t, as_r, as_a0;
    int as_m = 1, as_K = 0;
    long as_qcap = 100000;
    auto* c_as = c_bd->add_subcommand("aseq", "growing radius sequence: monotonicity and product bounds");
    c_as->add_option("--t", as_t, "exponent t in (0,1), rational num[/den]")->required();
    c_as->add_option("--r", as_r, "exponent r in (1-t,1), rational num[/den]")->required();
    c_as->add_option("--m", as_m, "variable count (default 1)");
    c_as->add_option("--a-start", as_a0, "first radius, rational num[/den]")->required();
    c_as->add_option("--K", as_K, "sequence length")->required();
    c_as->add_option("--q-cap", as_qcap, "hard stop for each sup scan (default 100000)");
    c_as->callback([&] {
        action = [&]() -> int {
            const liegen::PrecisionConfig pc{digits, 1e-40};
            liegen::RadiusSeqConfig cfg;
            cfg.t = liegen::rational_from_string(as_t);
            cfg.r = liegen::rational_from_string(as_r);
            cfg.m = as_m;
            cfg.a_start = liegen::rational_from_string(as_a0);
            cfg.K = as_K;
            cfg.q_cap = as_qcap;
            const liegen::RadiusSeqResult res = liegen::a_seq(cfg, pc);
            const double last = res.values.back();
            const double ratio =
                res.values.size() > 1 ? last / res.values[res.values.size() - 2] : 1.0;
            if (as_json) {
                ojson j = report_json("bounds-aseq", res.report);
                j["values"] = res.values;
                j["final"] = last;
                j["final_ratio"] = ratio;
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << "a_" << res.values.size() << " = " << last
                          << "  final ratio = " << ratio << '\n';
                print_report_text(res.report);
            }
            if (!res.report.precondition_ok) return 2;
            return res.report.passed ? 0 : 1;
        };
    });

    // ---- verify -------------------------------------------------------
    auto* c_vf = app.add_subcommand("verify", "quantitative statements on a concrete input");
    c_vf->require_subcommand(1);

    std::string vp_in, vp_s, vp_a;
    int vp_K = 0, vp_N = 0;
    auto* c_vp = c_vf->add_subcommand("potencias", "iterated-power coefficient bound for a dominated field");
    c_vp->add_option("--in", vp_in, "field document")->required();
    c_vp->add_option("--s", vp_s, "growth exponent, rational num[/den]")->required();
    c_vp->add_option("--a", vp_a, "hypothesis radius, rational num[/den]")->required();
    c_vp->add_option("--K", vp_K, "highest power checked")->required();
    c_vp->add_option("--N", vp_N, "hypothesis degree cap")->required();
    c_vp->callback([&] {
        action = [&]() -> int {
            const liegen::PrecisionConfig pc{digits, 1e-40};
            const liegen::BoundsReport rep = liegen::check_power_bounds(
                load_field(vp_in), liegen::rational_from_string(vp_s),
                liegen::rational_from_string(vp_a), vp_K, vp_N, pc);
            return finish_report("verify-potencias", rep, as_json);
        };
    });

    std::string vt_in, vt_s, vt_a;
    int vt_N = 0;
    auto* c_vt = c_vf->add_subcommand("theorem", "generator bound at doubled radius under the smallness condition");
    c_vt->add_option("--in", vt_in, "diffeo document")->required();
    c_vt->add_option("--s", vt_s, "growth exponent, rational num[/den]")->required();
    c_vt->add_option("--a", vt_a, "hypothesis radius, rational num[/den]")->required();
    c_vt->add_option("--N", vt_N, "degree cap")->required();
    c_vt->callback([&] {
        action = [&]() -> int {
            const liegen::PrecisionConfig pc{digits, 1e-40};
            const liegen::BoundsReport rep = liegen::check_generator_bound(
                load_diffeo(vt_in), liegen::rational_from_string(vt_s),
                liegen::rational_from_string(vt_a), vt_N, pc);
            return finish_report("verify-theorem", rep, as_json);
        };
    });

    std::string vb_in, vb_s, vb_a, vb_r;
    int vb_K = 0, vb_N = 0;
    long vb_qcap = 100000;
    auto* c_vb = c_vf->add_subcommand("biendefinido", "flow stays in the Gevrey class below the critical exponent");
    c_vb->add_option("--in", vb_in, "field document")->required();
    c_vb->add_option("--s", vb_s, "growth exponent in (0, 1/(n-1)), rational num[/den]")->required();
    c_vb->add_option("--a", vb_a, "hypothesis radius, rational num[/den]")->required();
    c_vb->add_option("--r", vb_r, "sequence exponent in (1-s(n-1), 1), rational num[/den]")->required();
    c_vb->add_option("--K", vb_K, "powers checked / sequence length")->required();
    c_vb->add_option("--N", vb_N, "degree cap")->required();
    c_vb->add_option("--q-cap", vb_qcap, "hard stop for each sup scan (default 100000)");
    c_vb->callback([&] {
        action = [&]() -> int {
            const liegen::PrecisionConfig pc{digits, 1e-40};
            const liegen::VectorField X = load_field(vb_in);
            const liegen::Rational s = liegen::rational_from_string(vb_s);
            const liegen::Rational a = liegen::rational_from_string(vb_a);
            liegen::RadiusSeqConfig cfg;
            cfg.t = s * (X.min_order() - 1);
            cfg.r = liegen::rational_from_string(vb_r);
            cfg.m = X.vars();
            cfg.a_start = a;
            cfg.K = vb_K;
            cfg.q_cap = vb_qcap;
            const liegen::BoundsReport rep = liegen::check_exp_gevrey(X, s, a, cfg, vb_N, pc);
            return finish_report("verify-biendefinido", rep, as_json);
        };
    });

    FallthroughAll::apply(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const liegen::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
