// Command line front end: validation, approximations, obstructions,
// intersection homology, signatures, instance generation, and built-in
// fixtures. Reports go to stdout, diagnostics to stderr. Exit codes:
// 0 success, 1 invalid data or failed computation, 2 usage errors.

#include "isx/isx.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace isx;

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

Instance load_instance(const std::string& path) { return parse_instance(slurp(path)); }

Perversity parse_perversity(const std::string& s) {
    if (s == "lower") return Perversity::lower;
    if (s == "upper") return Perversity::upper;
    throw std::runtime_error("unknown perversity '" + s + "'");
}

struct Options {
    std::string input;
    std::string format = "text";
    std::string perversity = "lower";
    std::string out;
    std::string check_file;
    std::string approx_file;
    std::string approx_lower_file;
    std::string approx_upper_file;
    bool witt_approx = false;
    // gen
    int dimension = 4;
    std::uint64_t seed = 0;
    bool adversarial = false;
    // fixture
    std::string fixture_name;
};

ValidationReport full_validation(const Instance& inst) {
    ValidationReport rep = validate_tube(inst.tube);
    rep.merge(validate_global(inst.tube, inst.global));
    if (!rep.ok) return rep;
    // Structural consistency beyond the equational checks: these hold
    // automatically for valid data, so any failure flags the input.
    try {
        const ZYData zl = compute_zy(inst.tube, Perversity::lower);
        const ZYData zu = compute_zy(inst.tube, Perversity::upper);
        rep.merge(check_zy_duality(inst.tube, zl, zu));
        if (!rep.ok) return rep;
        const Approximation al = default_approximation(inst.tube, Perversity::lower);
        const Approximation au = default_approximation(inst.tube, Perversity::upper);
        const ValidationReport cl = check_approximation(inst.tube, Perversity::lower, al);
        const ValidationReport cu = check_approximation(inst.tube, Perversity::upper, au);
        rep.merge(cl);
        rep.merge(cu);
        if (!rep.ok) return rep;
        obstructions(inst.tube, al, au);
        intersection_space(inst.tube, inst.global, al, Perversity::lower);
        intersection_space(inst.tube, inst.global, au, Perversity::upper);
    } catch (const std::exception& e) {
        rep.fail(std::string("derived data is inconsistent: ") + e.what());
    }
    return rep;
}

int cmd_validate(const Options& opt) {
    const Instance inst = load_instance(opt.input);
    const ValidationReport rep = full_validation(inst);
    if (opt.format == "json") {
        json out;
        out["format"] = "isx-report-v1";
        out["command"] = "validate";
        out["name"] = inst.name;
        out["ok"] = rep.ok;
        out["errors"] = rep.errors;
        std::cout << dump_json(out);
    } else {
        if (rep.ok) {
            std::cout << "instance " << inst.name << ": valid\n";
        } else {
            std::cout << "instance " << inst.name << ": INVALID\n";
            for (const auto& e : rep.errors) std::cout << "  - " << e << "\n";
        }
    }
    return rep.ok ? 0 : 1;
}

Approximation pick_approximation(const Instance& inst, Perversity pv, const Options& opt,
                                 std::string& label) {
    if (opt.witt_approx) {
        label = "witt";
        return witt_approximation(inst.tube);
    }
    if (!opt.approx_file.empty()) {
        label = "file";
        const Approximation a =
            approximation_from_json(parse_json_text(slurp(opt.approx_file)), inst.tube, pv);
        const ValidationReport rep = check_approximation(inst.tube, pv, a);
        if (!rep.ok)
            throw std::runtime_error("approximation in '" + opt.approx_file +
                                     "' rejected: " + rep.errors.front());
        return a;
    }
    label = "default";
    return default_approximation(inst.tube, pv);
}

int cmd_approx(const Options& opt) {
    const Instance inst = load_instance(opt.input);
    const Perversity pv = parse_perversity(opt.perversity);
    if (!opt.check_file.empty()) {
        const Approximation cand =
            approximation_from_json(parse_json_text(slurp(opt.check_file)), inst.tube, pv);
        const ValidationReport rep = check_approximation(inst.tube, pv, cand);
        if (opt.format == "json") {
            json out;
            out["format"] = "isx-report-v1";
            out["command"] = "approx-check";
            out["name"] = inst.name;
            out["perversity"] = name(pv);
            out["ok"] = rep.ok;
            out["errors"] = rep.errors;
            std::cout << dump_json(out);
        } else {
            std::cout << "candidate approximation (" << name(pv) << "): "
                      << (rep.ok ? "accepted" : "REJECTED") << "\n";
            for (const auto& e : rep.errors) std::cout << "  - " << e << "\n";
        }
        return rep.ok ? 0 : 1;
    }
    const Approximation a =
        opt.witt_approx ? witt_approximation(inst.tube) : default_approximation(inst.tube, pv);
    if (opt.format == "json") {
        write_out(opt.out, dump_json(approximation_to_json(a, pv, inst.tube.min_degree,
                                                           inst.tube.max_degree)));
    } else {
        std::cout << (opt.witt_approx ? "witt" : "default") << " approximation of " << inst.name
                  << " (" << name(pv) << ")\n";
        std::cout << "degree  dim\n";
        for (int i = inst.tube.min_degree; i <= inst.tube.max_degree; ++i)
            std::cout << i << "  " << a.complex.space.dim(i) << "\n";
    }
    return 0;
}

int cmd_obstructions(const Options& opt) {
    const Instance inst = load_instance(opt.input);
    std::string label = "default";
    Approximation al, au;
    if (opt.witt_approx) {
        label = "witt";
        al = witt_approximation(inst.tube);
        au = al;
    } else if (!opt.approx_lower_file.empty() || !opt.approx_upper_file.empty()) {
        if (opt.approx_lower_file.empty() || opt.approx_upper_file.empty())
            throw std::runtime_error("--approx-lower and --approx-upper must be given together");
        label = "files";
        al = approximation_from_json(parse_json_text(slurp(opt.approx_lower_file)), inst.tube,
                                     Perversity::lower);
        au = approximation_from_json(parse_json_text(slurp(opt.approx_upper_file)), inst.tube,
                                     Perversity::upper);
        for (const auto& [pv, a] : {std::pair{Perversity::lower, &al},
                                    std::pair{Perversity::upper, &au}}) {
            const ValidationReport rep = check_approximation(inst.tube, pv, *a);
            if (!rep.ok)
                throw std::runtime_error(std::string("supplied ") + name(pv) +
                                         " approximation rejected: " + rep.errors.front());
        }
    } else {
        al = default_approximation(inst.tube, Perversity::lower);
        au = default_approximation(inst.tube, Perversity::upper);
    }
    const ObstructionReport rep = obstructions(inst.tube, al, au);
    if (opt.format == "json") {
        json out;
        out["format"] = "isx-report-v1";
        out["command"] = "obstructions";
        out["name"] = inst.name;
        out["method"] = label;
        json deg = json::object();
        for (const auto& [r, ok] : rep.diagram_vanishes) {
            json e;
            e["diagram_vanishes"] = ok;
            e["pairing_vanishes"] = rep.pairing_vanishes.at(r);
            deg[std::to_string(r)] = e;
        }
        out["degrees"] = deg;
        out["all_vanish"] = rep.all_vanish;
        out["failing_degrees"] = rep.failing_degrees;
        std::cout << dump_json(out);
    } else {
        std::cout << "duality obstructions of " << inst.name << " (" << label
                  << " approximation)\n";
        std::cout << "degree  diagram  pairing\n";
        for (const auto& [r, ok] : rep.diagram_vanishes)
            std::cout << r << "  " << (ok ? "vanishes" : "FAILS") << "  "
                      << (rep.pairing_vanishes.at(r) ? "vanishes" : "FAILS") << "\n";
        std::cout << "all vanish: " << (rep.all_vanish ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_homology(const Options& opt) {
    const Instance inst = load_instance(opt.input);
    const Perversity pv = parse_perversity(opt.perversity);
    const ValidationReport vr = full_validation(inst);
    if (!vr.ok) throw std::runtime_error("invalid instance: " + vr.errors.front());
    std::string label;
    const Approximation a = pick_approximation(inst, pv, opt, label);
    const IXModel m = intersection_space(inst.tube, inst.global, a, pv);
    const int N = inst.tube.dimension;
    if (opt.format == "json") {
        json out;
        out["format"] = "isx-report-v1";
        out["command"] = "homology";
        out["name"] = inst.name;
        out["perversity"] = name(pv);
        out["approximation"] = label;
        out["min_degree"] = inst.tube.min_degree;
        out["max_degree"] = inst.tube.max_degree;
        json dims = json::array();
        for (int i = inst.tube.min_degree; i <= inst.tube.max_degree; ++i)
            dims.push_back(m.H().dim(i));
        out["dims"] = dims;
        std::cout << dump_json(out);
    } else {
        std::cout << "intersection space homology of " << inst.name << " (" << name(pv) << ", "
                  << label << " approximation)\n";
        std::cout << "degree  dim  dim at complementary degree\n";
        for (int i = inst.tube.min_degree; i <= inst.tube.max_degree; ++i) {
            std::cout << i << "  " << m.H().dim(i) << "  ";
            const int c = N - i;
            if (c >= inst.tube.min_degree && c <= inst.tube.max_degree)
                std::cout << m.H().dim(c);
            else
                std::cout << "-";
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_signature(const Options& opt) {
    const Instance inst = load_instance(opt.input);
    const ValidationReport vr = full_validation(inst);
    if (!vr.ok) throw std::runtime_error("invalid instance: " + vr.errors.front());
    const Approximation a = opt.witt_approx ? witt_approximation(inst.tube)
                                            : default_approximation(inst.tube, Perversity::lower);
    const SignatureReport rep = signature_report(inst.tube, inst.global, a);
    if (opt.format == "json") {
        json out;
        out["format"] = "isx-report-v1";
        out["command"] = "signature";
        out["name"] = inst.name;
        out["middle_degree"] = rep.middle;
        json amb, ix;
        amb["plus"] = rep.sig_ambient.n_plus;
        amb["minus"] = rep.sig_ambient.n_minus;
        amb["zero"] = rep.sig_ambient.n_zero;
        amb["sigma"] = rep.sig_ambient.sigma();
        ix["plus"] = rep.sig_ix.n_plus;
        ix["minus"] = rep.sig_ix.n_minus;
        ix["zero"] = rep.sig_ix.n_zero;
        ix["sigma"] = rep.sig_ix.sigma();
        out["ambient"] = amb;
        out["intersection"] = ix;
        out["equal"] = rep.equal;
        std::cout << dump_json(out);
    } else {
        std::cout << "signatures of " << inst.name << " at middle degree " << rep.middle << "\n";
        std::cout << "ambient form:      sigma " << rep.sig_ambient.sigma() << " (+"
                  << rep.sig_ambient.n_plus << ", -" << rep.sig_ambient.n_minus << ", 0:"
                  << rep.sig_ambient.n_zero << ")\n";
        std::cout << "intersection form: sigma " << rep.sig_ix.sigma() << " (+"
                  << rep.sig_ix.n_plus << ", -" << rep.sig_ix.n_minus << ", 0:"
                  << rep.sig_ix.n_zero << ")\n";
        std::cout << "equal: " << (rep.equal ? "yes" : "no") << "\n";
    }
    return rep.equal ? 0 : 1;
}

int cmd_gen(const Options& opt) {
    GenProfile p;
    p.dimension = opt.dimension;
    p.seed = opt.seed;
    p.adversarial = opt.adversarial;
    const Instance inst = generate_instance(p);
    write_out(opt.out, serialize_instance(inst));
    return 0;
}

int cmd_fixture(const Options& opt) {
    Instance inst;
    if (opt.fixture_name == "pinched-torus")
        inst = pinched_torus();
    else if (opt.fixture_name == "empty")
        inst = empty_instance();
    else
        throw std::runtime_error("unknown fixture '" + opt.fixture_name +
                                 "' (available: pinched-torus, empty)");
    write_out(opt.out, serialize_instance(inst));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rational calculator for intersection space homology"};
    app.require_subcommand(1);
    Options opt;

    const auto add_input = [&](CLI::App* sub) {
        sub->add_option("instance", opt.input, "instance file, or - for stdin")->required();
    };
    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "output format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* validate = app.add_subcommand("validate", "check an instance for consistency");
    add_input(validate);
    add_format(validate);

    CLI::App* approx = app.add_subcommand("approx", "compute or check a boundary approximation");
    add_input(approx);
    add_format(approx);
    approx->add_option("--perversity", opt.perversity, "lower or upper")
        ->check(CLI::IsMember({"lower", "upper"}));
    approx->add_flag("--witt-approx", opt.witt_approx, "use the witt construction");
    approx->add_option("--check", opt.check_file, "candidate approximation file to verify");
    approx->add_option("--out", opt.out, "write to this file instead of stdout");

    CLI::App* obst = app.add_subcommand("obstructions", "evaluate the duality obstructions");
    add_input(obst);
    add_format(obst);
    obst->add_flag("--witt-approx", opt.witt_approx, "use the witt construction");
    obst->add_option("--approx-lower", opt.approx_lower_file, "lower approximation file");
    obst->add_option("--approx-upper", opt.approx_upper_file, "upper approximation file");

    CLI::App* hom = app.add_subcommand("homology", "intersection space homology per degree");
    add_input(hom);
    add_format(hom);
    hom->add_option("--perversity", opt.perversity, "lower or upper")
        ->check(CLI::IsMember({"lower", "upper"}));
    hom->add_flag("--witt-approx", opt.witt_approx, "use the witt construction");
    hom->add_option("--approx", opt.approx_file, "approximation file to use");

    CLI::App* sig = app.add_subcommand("signature", "compare ambient and intersection signatures");
    add_input(sig);
    add_format(sig);
    sig->add_flag("--witt-approx", opt.witt_approx, "use the witt construction");

    CLI::App* gen = app.add_subcommand("gen", "generate a reproducible random instance");
    gen->add_option("--dimension", opt.dimension, "even total dimension")->required();
    gen->add_option("--seed", opt.seed, "random seed")->required();
    gen->add_flag("--adversarial", opt.adversarial,
                  "bias toward instances whose canonical approximation is obstructed");
    gen->add_option("--out", opt.out, "write to this file instead of stdout");

    CLI::App* fix = app.add_subcommand("fixture", "emit a built-in instance");
    fix->add_option("name", opt.fixture_name, "pinched-torus or empty")->required();
    fix->add_option("--out", opt.out, "write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt);
        if (approx->parsed()) return cmd_approx(opt);
        if (obst->parsed()) return cmd_obstructions(opt);
        if (hom->parsed()) return cmd_homology(opt);
        if (sig->parsed()) return cmd_signature(opt);
        if (gen->parsed()) return cmd_gen(opt);
        if (fix->parsed()) return cmd_fixture(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "usage error: no command given\n";
    return 2;
}
