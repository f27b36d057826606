#include "cli.hpp"

#include "render.hpp"

#include "mxl/errors.hpp"
#include "mxl/expr.hpp"
#include "mxl/json_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace mxl {

namespace {

/// Numeric defaults for every subcommand; flags and MXL_* variables override them.
struct Config {
    int grid = 256;
    double tol = 1e-8;
    int samples = 1024;
    int threads = 1;
    unsigned seed = 20240611;
    bool timings = false;
    std::string output;

    CheckOptions check() const {
        CheckOptions o;
        o.grid = grid;
        o.tol = tol;
        o.samples = samples;
        o.threads = threads;
        o.seed = seed;
        return o;
    }
    Json echo() const {
        return {{"grid", grid}, {"tol", tol}, {"samples", samples}, {"threads", threads}, {"seed", seed}};
    }
};

class Stopwatch {
public:
    double lap() {
        auto now = std::chrono::steady_clock::now();
        double s = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

/// Thrown for unreadable inputs; maps to exit code 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_for(Status s) {
    switch (s) {
    case Status::Verified: return kExitVerified;
    case Status::Refuted: return kExitRefuted;
    case Status::Inconclusive: return kExitInconclusive;
    }
    return kExitInconclusive;
}

Json header(const char* kind) { return {{"schema", std::string("mxl.") + kind}, {"version", kSchemaVersion}}; }

void emit_text(const std::string& text, const Config& cfg, std::ostream& out) {
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output);
    if (!f) throw InputError("cannot write " + cfg.output);
    f << text;
}

void emit(Json j, const Config& cfg, std::ostream& out, const Json& timings) {
    if (cfg.timings) j["timings"] = timings;
    emit_text(j.dump(2) + "\n", cfg, out);
}

MixedPoly read_poly(const std::string& text) {
    try {
        return parse_poly(text);
    } catch (const SyntaxError& e) {
        throw InputError(e.what());
    } catch (const EmptyPolynomial& e) {
        throw InputError(e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot read " + path);
    try {
        return Json::parse(f);
    } catch (const Json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

bool link_available(const MixedPoly& p, const NondegReport& r) {
    if (r.inner_nd != Status::Verified) return false;
    return classify_structure(principal_part(p)).u_semiholomorphic || r.nice == Status::Verified;
}

int cmd_analyze(const std::string& text, const Config& cfg, std::ostream& out) {
    Stopwatch sw;
    Json timings;
    MixedPoly p = read_poly(text);
    Json j = header("analysis");
    j["input"] = text;
    j["polynomial"] = format_poly(p);
    j["options"] = cfg.echo();
    j["structure"] = to_json(classify_structure(p));
    timings["parse"] = sw.lap();
    j["newton"] = to_json(newton_polygon(p));
    timings["newton"] = sw.lap();
    NondegReport r = analyze_nondegeneracy(p, cfg.check());
    j["nondegeneracy"] = to_json(r);
    timings["nondegeneracy"] = sw.lap();
    j["link"] = nullptr;
    if (link_available(p, r)) {
        LinkOptions lo;
        lo.samples = cfg.samples;
        lo.check_preconditions = false;
        lo.nondeg = cfg.check();
        try {
            j["link"] = to_json(link_of_singularity(p, lo));
        } catch (const Error& e) {
            j["link_error"] = e.what();
        }
        timings["link"] = sw.lap();
    }
    const Status overall = r.inner_nd.value_or(Status::Inconclusive);
    j["status"] = to_string(overall);
    emit(j, cfg, out, timings);
    return exit_for(overall);
}

int cmd_link(const std::string& text, const Config& cfg, std::ostream& out, std::ostream& err) {
    Stopwatch sw;
    MixedPoly p = read_poly(text);
    LinkOptions lo;
    lo.samples = cfg.samples;
    lo.nondeg = cfg.check();
    Json j = header("link");
    j["input"] = text;
    j["polynomial"] = format_poly(p);
    j["options"] = cfg.echo();
    try {
        j["link"] = to_json(link_of_singularity(p, lo));
    } catch (const PreconditionFailed& e) {
        err << e.what() << "\n";
        return e.status() == "Refuted" ? kExitRefuted : kExitInconclusive;
    }
    j["status"] = "Verified";
    emit(j, cfg, out, {{"total", sw.lap()}});
    return kExitVerified;
}

int cmd_braid(const std::string& text, int face, const Config& cfg, std::ostream& out) {
    Stopwatch sw;
    MixedPoly p = read_poly(text);
    NewtonData nd = newton_polygon(p);
    if (face < 1 || face > static_cast<int>(nd.faces.size()))
        throw InputError("--face must lie in 1.." + std::to_string(nd.faces.size()));
    LoopPoly g = face_to_loop(p, nd, face - 1);
    LoopPoly tracked = face > 1 ? g.divided_by_z(static_cast<int>(nd.faces[face - 1].m)) : g;
    GeometricBraid b = track_roots(tracked, cfg.samples);
    Json j = header("braid");
    j["input"] = text;
    j["face"] = face;
    j["loop"] = to_json(g);
    j["tracked_loop"] = to_json(tracked);
    j["braid"] = to_json(b);
    j["word"] = to_json(extract_word(b));
    j["status"] = "Verified";
    emit(j, cfg, out, {{"total", sw.lap()}});
    return kExitVerified;
}

struct PFiberedArgs {
    std::string word;
    int strands = 0;
    int harmonics = 0;
    bool affine = false;
    int m = 0;
    std::string loop_file;
};

int cmd_pfibered(const PFiberedArgs& a, const Config& cfg, std::ostream& out) {
    Stopwatch sw;
    Json j = header("pfibered");
    LoopPoly g;
    if (!a.loop_file.empty()) {
        try {
            g = loop_from_json(read_json_file(a.loop_file));
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        j["source"] = {{"loop_file", a.loop_file}};
    } else {
        BraidWord w;
        try {
            w = BraidWord::parse(a.word, a.strands);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        WordBraid wb = braid_from_word(w, a.harmonics, a.affine, cfg.samples);
        g = wb.loop;
        j["source"] = {{"word", to_json(w)}, {"harmonics", wb.harmonics}, {"affine", a.affine}};
    }
    FibrationCertificate c = check_pfibered(g, a.m, cfg.samples);
    j["loop"] = to_json(g);
    j["certificate"] = to_json(c);
    j["status"] = to_string(c.status);
    emit(j, cfg, out, {{"total", sw.lap()}});
    return exit_for(c.status);
}

int cmd_realize(const std::string& path, const Config& cfg, std::ostream& out, std::ostream& err) {
    Stopwatch sw;
    Json in = read_json_file(path);
    std::vector<TowerInput> inputs;
    try {
        inputs = tower_from_json(in, cfg.samples);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    } catch (const Json::exception& e) {
        throw InputError(e.what());
    }
    TowerOptions to;
    to.samples = cfg.samples;
    to.nondeg = cfg.check();
    Json j = header("realization");
    j["input"] = path;
    TowerResult r;
    try {
        r = build_tower(inputs, to);
    } catch (const NotPFibered& e) {
        err << e.what() << "\n";
        return kExitRefuted;
    }
    j["polynomial"] = format_poly(r.f);
    j["tower"] = to_json(r.spec);
    j["nondegeneracy"] = to_json(r.report);
    Status status;
    try {
        RealizationReport v = validate_realization(r.f, r.spec, to);
        j["validation"] = to_json(v);
        status = v.status;
    } catch (const Mismatch& e) {
        j["validation"] = {{"status", "Refuted"}, {"note", e.what()}};
        status = Status::Refuted;
    }
    j["status"] = to_string(status);
    emit(j, cfg, out, {{"total", sw.lap()}});
    return exit_for(status);
}

int cmd_render(const std::string& word, int strands, const Config& cfg, std::ostream& out) {
    BraidWord w;
    try {
        w = BraidWord::parse(word, strands);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    emit_text(render_word_svg(w), cfg, out);
    return kExitVerified;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mixed polynomial singularities: non-degeneracy, links and braids"};
    app.name("mxl");
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--grid", cfg.grid, "certificate grid nodes per dimension")->envname("MXL_GRID")->check(CLI::PositiveNumber);
    app.add_option("--tol", cfg.tol, "residual tolerance")->envname("MXL_TOL")->check(CLI::PositiveNumber);
    app.add_option("--samples", cfg.samples, "t-samples for braids and scans")->envname("MXL_SAMPLES")->check(CLI::Range(8, 1 << 20));
    app.add_option("--threads", cfg.threads, "worker threads for face checks")->envname("MXL_THREADS")->check(CLI::Range(1, 256));
    app.add_option("--seed", cfg.seed, "seed recorded in reports")->envname("MXL_SEED");
    app.add_flag("--timings", cfg.timings, "include wall-clock timings in JSON output");

    std::string poly, path, word;
    int face = 1, strands = 0;
    PFiberedArgs pf;

    auto* analyze = app.add_subcommand("analyze", "structure, Newton boundary, non-degeneracy and link");
    analyze->add_option("poly", poly, "polynomial in u, v, conj(u), conj(v)")->required();
    analyze->add_option("--json", cfg.output, "write the report to a file");

    auto* link = app.add_subcommand("link", "link of the singularity");
    link->add_option("poly", poly)->required();
    link->add_option("--json", cfg.output, "write the report to a file");

    auto* braid = app.add_subcommand("braid", "braid of one face loop");
    braid->add_option("poly", poly)->required();
    braid->add_option("--face", face, "1-based face index")->default_val(1);
    braid->add_option("--json", cfg.output, "write the report to a file");

    auto* pfib = app.add_subcommand("pfibered", "P-fibered certificate of a braid");
    auto* word_opt = pfib->add_option("--word", pf.word, "braid word, e.g. \"1 -2 1\"");
    auto* loop_opt = pfib->add_option("--loop", pf.loop_file, "JSON file holding a loop polynomial");
    word_opt->excludes(loop_opt);
    pfib->add_option("--strands", pf.strands, "strand count for --word");
    pfib->add_option("--harmonics", pf.harmonics, "Fourier harmonics per cycle (0: automatic)");
    pfib->add_flag("--affine", pf.affine, "shift basepoints off the origin");
    pfib->add_option("--m", pf.m, "O-multiplicity")->default_val(0)->check(CLI::NonNegativeNumber);
    pfib->add_option("--json", cfg.output, "write the report to a file");

    auto* realize = app.add_subcommand("realize", "build and validate a tower polynomial");
    realize->add_option("tower", path, "JSON file describing the tower")->required();
    realize->add_option("--json", cfg.output, "write the report to a file");

    auto* render = app.add_subcommand("render", "SVG diagram of a braid word");
    render->add_option("--word", word, "braid word")->required();
    render->add_option("--strands", strands, "strand count");
    render->add_option("-o,--output", cfg.output, "SVG file");

    std::vector<std::string> argv_store{"mxl"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (pfib->parsed() && word_opt->count() == 0 && loop_opt->count() == 0)
            throw CLI::RequiredError("--word or --loop");
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitVerified : kExitUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(poly, cfg, out);
        if (link->parsed()) return cmd_link(poly, cfg, out, err);
        if (braid->parsed()) return cmd_braid(poly, face, cfg, out);
        if (pfib->parsed()) return cmd_pfibered(pf, cfg, out);
        if (realize->parsed()) return cmd_realize(path, cfg, out, err);
        if (render->parsed()) return cmd_render(word, strands, cfg, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInconclusive;
    }
    return kExitUsage;
}

}  // namespace mxl
