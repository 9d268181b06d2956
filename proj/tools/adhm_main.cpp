// Command-line surface: validation, stability, monad probes, tangent
// classification, deformation curves, Uhlenbeck projection, and batch
// sampling over the symplectic ADHM data model.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>

#include "adhm/json_io.hpp"

using namespace adhm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct GlobalOpts {
    double tol = kDefaultTol;
    uint64_t seed = 42;
    bool pretty = false;
    bool timing = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json base_report(const std::string& command, const std::string& path, const GlobalOpts& g) {
    json rep;
    rep["command"] = command;
    if (!path.empty()) {
        rep["input"] = path;
        rep["input_digest"] = fnv1a_hex(read_file(path));
    }
    rep["seed"] = g.seed;
    rep["tolerance"] = g.tol;
    return rep;
}

void emit(const json& rep, const GlobalOpts& g, std::chrono::steady_clock::time_point start) {
    json out = rep;
    if (g.timing) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        out["timing_ms"] = ms;
    }
    std::cout << (g.pretty ? out.dump(2) : out.dump()) << "\n";
}

SymplecticDatum load_valid(const std::string& path, double tol) {
    SymplecticDatum d = load_datum(path);
    ValidationReport rep = validate(d, tol);
    if (!rep.ok) {
        std::string msg = "datum fails validation:";
        for (const auto& v : rep.violated()) msg += " " + v;
        throw ParseError(msg);
    }
    return d;
}

void warn_float_stability(const SymplecticDatum& d) {
    if (!is_exact(d.field()))
        std::cerr << "warning: stability over complex64 uses rank thresholds and is advisory; "
                     "use an exact field for a certified answer\n";
}

std::array<Scalar, 3> parse_point(const std::string& text, FieldKind f) {
    std::array<Scalar, 3> p;
    std::stringstream ss(text);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',') && i < 3) {
        if (f == FieldKind::Complex64)
            p[i] = Scalar::complex64(std::stod(part), 0.0);
        else {
            mpq_class q(part);
            q.canonicalize();
            p[i] = Scalar::rational(q).to_field(f);
        }
        ++i;
    }
    if (i != 3) throw ParseError("point must be given as x,y,z");
    return p;
}

int thread_budget(size_t items) {
    unsigned hw = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("ADHM_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) hw = static_cast<unsigned>(v);
    }
    if (hw == 0) hw = 1;
    return static_cast<int>(std::min<size_t>(hw, items == 0 ? 1 : items));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"framed symplectic sheaves on the projective plane, as matrix data"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--tol", g.tol, "relative tolerance for float predicates");
    app.add_option("--seed", g.seed, "seed for randomized stages");
    app.add_flag("--pretty", g.pretty, "indent JSON output");
    app.add_flag("--timing", g.timing, "include timing in reports (breaks byte-determinism)");

    std::string path, point_text, grid_text;
    int opt_r = 4, opt_n = 2, opt_k = -1, opt_count = 10;

    auto* c_validate = app.add_subcommand("validate", "check the defining equations");
    c_validate->add_option("file", path)->required();
    auto* c_stability = app.add_subcommand("stability", "stable / co-stable flags");
    c_stability->add_option("file", path)->required();
    auto* c_iota = app.add_subcommand("iota", "classical datum with J = -Omega^{-1} I^T G");
    c_iota->add_option("file", path)->required();
    auto* c_tangent = app.add_subcommand("tangent", "tangent dimensions at the datum");
    c_tangent->add_option("file", path)->required();
    auto* c_smooth = app.add_subcommand("smooth", "smooth / singular verdict");
    c_smooth->add_option("file", path)->required();
    auto* c_deform = app.add_subcommand("deform", "deformation curve into invertible G");
    c_deform->add_option("file", path)->required();
    auto* c_uhl = app.add_subcommand("uhlenbeck", "project to the ideal-instanton space");
    c_uhl->add_option("file", path)->required();

    auto* c_monad = app.add_subcommand("monad", "monad diagnostics");
    c_monad->require_subcommand(1);
    auto* m_check = c_monad->add_subcommand("check", "verify beta*alpha = 0 coefficientwise");
    m_check->add_option("file", path)->required();
    auto* m_fiber = c_monad->add_subcommand("fiber", "fiber dimensions at a point");
    m_fiber->add_option("file", path)->required();
    m_fiber->add_option("--point", point_text, "homogeneous point x,y,z")->required();
    auto* m_scan = c_monad->add_subcommand("scan", "locate fiber-dimension jumps");
    m_scan->add_option("file", path)->required();
    m_scan->add_option("--grid", grid_text, "extra chart points x0,y0;x1,y1;...");

    auto* c_sample = app.add_subcommand("sample", "random stable data with statistics");
    c_sample->add_option("--r", opt_r, "framing rank (even)");
    c_sample->add_option("--n", opt_n, "charge");
    c_sample->add_option("--k", opt_k, "rank of G (default: mixed)");
    c_sample->add_option("--count", opt_count, "number of samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    auto start = std::chrono::steady_clock::now();
    try {
        if (c_validate->parsed()) {
            SymplecticDatum d = load_datum(path);
            json rep = base_report("validate", path, g);
            rep["results"] = validation_to_json(validate(d, g.tol));
            emit(rep, g, start);
            return kExitOk;
        }
        if (c_stability->parsed()) {
            SymplecticDatum d = load_valid(path, g.tol);
            warn_float_stability(d);
            json rep = base_report("stability", path, g);
            ClassicalDatum cd = iota(d);
            rep["results"]["stable"] = is_stable(d, g.tol);
            rep["results"]["costable"] = is_costable(cd, g.tol);
            rep["results"]["rank_G"] = rank_G(d, g.tol);
            emit(rep, g, start);
            return kExitOk;
        }
        if (c_iota->parsed()) {
            SymplecticDatum d = load_valid(path, g.tol);
            json rep = base_report("iota", path, g);
            rep["results"] = classical_to_json(iota(d));
            emit(rep, g, start);
            return kExitOk;
        }
        if (c_tangent->parsed() || c_smooth->parsed()) {
            SymplecticDatum d = load_valid(path, g.tol);
            warn_float_stability(d);
            json rep = base_report(c_smooth->parsed() ? "smooth" : "tangent", path, g);
            TangentReport tr = tangent_report(d, g.tol);
            rep["results"] = tangent_to_json(tr);
            emit(rep, g, start);
            return kExitOk;
        }
        if (c_deform->parsed()) {
            SymplecticDatum d = load_valid(path, g.tol);
            Rng rng = make_rng(g.seed);
            DeformationCurve curve = deform_general(d, rng, g.tol);
            Rng certrng = make_rng(g.seed ^ 0xc3a5c85c97cb3127ULL);
            SymplecticDatum ref = curve.A_t.field() == d.field()
                                      ? d
                                      : d.to_field(curve.A_t.field());
            double check_tol = curve.flag == CertFlag::FLOAT_CERTIFIED ? 1e-8 : g.tol;
            CurveCertificate cert = validate_curve(curve, ref, certrng, check_tol);
            json rep = base_report("deform", path, g);
            rep["results"]["curve"] = curve_to_json(curve);
            rep["results"]["certificate"] = certificate_to_json(cert);
            emit(rep, g, start);
            return kExitOk;
        }
        if (c_uhl->parsed()) {
            SymplecticDatum d = load_valid(path, g.tol);
            json rep = base_report("uhlenbeck", path, g);
            rep["results"] = uhlenbeck_to_json(project(d, g.tol));
            emit(rep, g, start);
            return kExitOk;
        }
        if (m_check->parsed()) {
            SymplecticDatum d = load_datum(path);
            json rep = base_report("monad check", path, g);
            ComplexCheck cc = check_complex(build_monad(iota(d)), g.tol);
            rep["results"]["complex"] = cc.ok;
            rep["results"]["residual"] = cc.residual;
            rep["results"]["lift"] = lift_to_json(check_lift(d, g.tol));
            emit(rep, g, start);
            return kExitOk;
        }
        if (m_fiber->parsed()) {
            SymplecticDatum d = load_valid(path, g.tol);
            MonadMaps mm = build_monad(iota(d));
            auto p = parse_point(point_text, d.field());
            json rep = base_report("monad fiber", path, g);
            rep["results"] = fiber_to_json(fiber(mm, p, g.tol));
            emit(rep, g, start);
            return kExitOk;
        }
        if (m_scan->parsed()) {
            SymplecticDatum d = load_valid(path, g.tol);
            SymplecticDatum df = d.to_field(FieldKind::Complex64);
            MonadMaps mm = build_monad(iota(df));
            auto candidates = default_singular_candidates(d, g.tol);
            if (!grid_text.empty()) {
                std::stringstream ss(grid_text);
                std::string part;
                while (std::getline(ss, part, ';')) {
                    auto comma = part.find(',');
                    if (comma == std::string::npos) throw ParseError("grid: expected x,y pairs");
                    candidates.push_back({Scalar::complex64(std::stod(part.substr(0, comma))),
                                          Scalar::complex64(std::stod(part.substr(comma + 1))),
                                          Scalar::complex64(1.0)});
                }
            }
            json rep = base_report("monad scan", path, g);
            json jumps = json::array();
            for (const auto& fr : scan_singular(mm, candidates, g.tol))
                jumps.push_back(fiber_to_json(fr));
            rep["results"]["jumps"] = jumps;
            rep["results"]["candidates_checked"] = candidates.size();
            emit(rep, g, start);
            return kExitOk;
        }
        if (c_sample->parsed()) {
            if (opt_r < 2 || opt_r % 2 != 0 || opt_n < 1) throw ParseError("need even r >= 2, n >= 1");
            json rep = base_report("sample", "", g);
            Rng master = make_rng(g.seed);
            struct Item {
                json payload;
                int k;
                bool smooth;
            };
            auto run_one = [&](int index) {
                Rng rng = master.derived(static_cast<uint64_t>(index));
                int k = opt_k >= 0 ? opt_k : static_cast<int>(rng.next() % (opt_n + 1));
                SymplecticDatum d = random_datum(opt_r, opt_n, k, rng);
                TangentReport tr = tangent_report(d, g.tol);
                Item item;
                item.k = k;
                item.smooth = tr.smooth;
                item.payload["datum"] = datum_to_json(d);
                item.payload["tangent"] = tangent_to_json(tr);
                item.payload["stratum"] = json::array({k, opt_n - k});
                return item;
            };
            std::vector<Item> items(opt_count);
            int workers = thread_budget(static_cast<size_t>(opt_count));
            if (workers <= 1) {
                for (int i = 0; i < opt_count; ++i) items[i] = run_one(i);
            } else {
                std::vector<std::future<Item>> futs;
                for (int i = 0; i < opt_count; ++i)
                    futs.push_back(std::async(std::launch::async, run_one, i));
                for (int i = 0; i < opt_count; ++i) items[i] = futs[i].get();
            }
            json arr = json::array();
            std::map<int, int> strata;
            int smooth_count = 0;
            for (const auto& it : items) {
                arr.push_back(it.payload);
                strata[it.k] += 1;
                smooth_count += it.smooth ? 1 : 0;
            }
            rep["results"]["samples"] = arr;
            rep["results"]["smooth_fraction"] =
                opt_count > 0 ? static_cast<double>(smooth_count) / opt_count : 0.0;
            json strata_json;
            for (const auto& [k, c] : strata) strata_json[std::to_string(k)] = c;
            rep["results"]["stratum_counts"] = strata_json;
            emit(rep, g, start);
            return kExitOk;
        }
        std::cerr << "no subcommand handled\n";
        return kExitInput;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ShapeError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NotStableError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const StageError& e) {
        std::cerr << "pipeline failure: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
