#include "apgeo/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "apgeo/cache.hpp"
#include "apgeo/filtration.hpp"
#include "apgeo/geodesics.hpp"
#include "apgeo/progressions.hpp"
#include "apgeo/ramsey.hpp"
#include "json.hpp"

namespace apgeo {

namespace {

constexpr const char* kDefaultCachePath = "./.apgeo-cache.jsonl";

std::string cache_path_from_env() {
    const char* env = std::getenv("APGEO_CACHE");
    return env && *env ? env : kDefaultCachePath;
}

void emit(const nlohmann::ordered_json& j, std::ostream& out, const std::string& out_file) {
    std::string text = j.dump(2) + "\n";
    out << text;
    if (!out_file.empty()) {
        std::ofstream f(out_file);
        if (!f) throw std::runtime_error("cannot write to " + out_file);
        f << text;
    }
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    return nlohmann::json::parse(in);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"arithmetic progressions in the primitive geodesic length spectrum "
                 "of the modular surface, with matrix certificates"};
    app.require_subcommand(1);

    std::string gamma_text, out_file, witness_file, map_file;
    std::string cache_path = cache_path_from_env();
    bool no_cache = false, brute = false, exhaustive = false;
    int k = 1, dim_n = 2, layer_i = 1, colors = 2, cap = 20;
    long prime = 3, level_r = 1, prime_bound = 10'000, bound = 100'000;
    long dm = 1, dmp = 1, samples = 500;
    long disc = 5;
    std::uint64_t seed = 12345;

    auto add_cache_flags = [&](CLI::App* cmd) {
        cmd->add_flag("--no-cache", no_cache, "disable the n-table cache");
        cmd->add_option("--cache", cache_path, "cache file path (default $APGEO_CACHE or " +
                                                   std::string(kDefaultCachePath) + ")");
    };

    auto* prog = app.add_subcommand("progression",
                                    "build a certified k-term progression from an absolutely "
                                    "primitive gamma");
    prog->add_option("--k", k, "number of terms")->required();
    prog->add_option("--gamma", gamma_text, "matrix, row-major a,b;c,d")->required();
    prog->add_option("--prime-bound", prime_bound, "sieve bound for the prime progression");
    prog->add_option("--out", out_file, "also write the witness JSON to this file");
    add_cache_flags(prog);

    auto* contains = app.add_subcommand("contains",
                                        "build a progression containing the length of a "
                                        "primitive gamma");
    contains->add_option("--k", k, "number of terms")->required();
    contains->add_option("--gamma", gamma_text, "matrix, row-major a,b;c,d")->required();
    contains->add_option("--prime-bound", prime_bound, "sieve bound for the prime progression");
    contains->add_option("--out", out_file, "also write the witness JSON to this file");
    add_cache_flags(contains);

    auto* verify = app.add_subcommand("verify", "re-check a witness file independently");
    verify->add_option("file", witness_file, "witness JSON file")->required();

    auto* absprim = app.add_subcommand("absprim", "classify gamma and report primitivity");
    absprim->add_option("--gamma", gamma_text, "matrix, row-major a,b;c,d")->required();

    auto* nfun = app.add_subcommand("nfun", "n(gamma, eta_v^r) for the standard recipe at v");
    nfun->add_option("--gamma", gamma_text, "matrix, row-major a,b;c,d")->required();
    nfun->add_option("--prime", prime, "prime v")->required();
    nfun->add_option("--r", level_r, "level r >= 1")->required();
    nfun->add_flag("--brute", brute, "use the direct-iteration oracle");
    add_cache_flags(nfun);

    auto* kernel = app.add_subcommand("kernel-check", "kernel-layer order checks in SL(n,Z/p^i)");
    kernel->add_option("--n", dim_n, "matrix dimension")->required();
    kernel->add_option("--p", prime, "prime")->required();
    kernel->add_option("--i", layer_i, "layer index i >= 1")->required();
    kernel->add_flag("--exhaustive", exhaustive, "enumerate the whole kernel layer");
    kernel->add_option("--samples", samples, "sample count for sampled mode");
    kernel->add_option("--seed", seed, "RNG seed for sampled mode");

    auto* vdw = app.add_subcommand("vdw", "Van der Waerden number by exhaustive search");
    vdw->add_option("--colors", colors, "number of colors r")->required();
    vdw->add_option("--k", k, "progression length")->required();
    vdw->add_option("--cap", cap, "search cap on N")->required();

    auto* transfer = app.add_subcommand("transfer",
                                        "transfer a witness across a simulated commensurability");
    transfer->add_option("--witness", witness_file, "witness JSON file")->required();
    transfer->add_option("--dm", dm, "cover degree over the source")->required();
    transfer->add_option("--dmp", dmp, "cover degree over the target")->required();
    transfer->add_option("--map", map_file, "JSON divisor-pair assignment file")->required();
    transfer->add_option("--k", k, "target progression length")->required();
    transfer->add_option("--prime-bound", prime_bound, "sieve bound for rebuilds");
    transfer->add_option("--out", out_file, "also write the result JSON to this file");
    add_cache_flags(transfer);

    auto* density = app.add_subcommand("density", "split-prime proportion for a discriminant");
    density->add_option("--disc", disc, "fundamental discriminant d0 > 0")->required();
    density->add_option("--bound", bound, "sieve bound")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    std::unique_ptr<NTableCache> cache;
    auto build_opts = [&]() {
        BuildOptions opts;
        opts.prime_bound = prime_bound;
        if (!no_cache) {
            cache = std::make_unique<NTableCache>(cache_path);
            opts.cache = cache.get();
        }
        return opts;
    };

    try {
        if (prog->parsed()) {
            IntMatrix gamma = IntMatrix::parse(gamma_text);
            ProgressionWitness w = build_progression(gamma, k, build_opts());
            emit(w.to_json(), out, out_file);
            return 0;
        }
        if (contains->parsed()) {
            IntMatrix gamma = IntMatrix::parse(gamma_text);
            ProgressionWitness w = build_progression_containing(gamma, k, build_opts());
            emit(w.to_json(), out, out_file);
            return 0;
        }
        if (verify->parsed()) {
            ProgressionWitness w = ProgressionWitness::from_json(load_json_file(witness_file));
            VerificationReport rep = verify_witness(w);
            emit(rep.to_json(), out, "");
            if (!rep.all_pass()) {
                for (const auto& c : rep.checks)
                    if (!c.pass) err << "FAILED: " << c.name << ": " << c.detail << "\n";
                return 1;
            }
            return 0;
        }
        if (absprim->parsed()) {
            IntMatrix gamma = IntMatrix::parse(gamma_text);
            Classification cls = classify(gamma);
            nlohmann::ordered_json j;
            j["gamma"] = gamma.to_json();
            switch (cls.cls) {
                case ElementClass::Elliptic: j["class"] = "elliptic"; break;
                case ElementClass::Parabolic: j["class"] = "parabolic"; break;
                case ElementClass::Hyperbolic: j["class"] = "hyperbolic"; break;
            }
            if (cls.hyperbolic.has_value()) {
                const HyperbolicElement& h = *cls.hyperbolic;
                j["trace"] = h.trace.get_str();
                j["d0"] = h.d0.get_str();
                j["lambda"] = h.lambda.to_json();
                j["unit_exponent"] = unit_exponent(h.lambda).get_str();
                j["primitive"] = is_primitive(h);
                j["absolutely_primitive"] = is_absolutely_primitive(h);
                LengthClass lc = length_class(h);
                j["length_class"] = lc.to_json();
                j["length"] = lc.numeric(50);
                if (!is_absolutely_primitive(h)) {
                    auto [mu, m] = abs_prim_root(h);
                    j["abs_prim_root"] = mu.matrix.to_json();
                    j["abs_prim_power"] = m.get_str();
                }
            }
            emit(j, out, "");
            return 0;
        }
        if (nfun->parsed()) {
            IntMatrix gamma = IntMatrix::parse(gamma_text);
            AdmissibleElement eta = build_admissible(GroupType::A1, 2, prime, {1, 2});
            NofOptions opts;
            if (!no_cache && !brute) {
                cache = std::make_unique<NTableCache>(cache_path);
                opts.cache = cache.get();
            }
            mpz_class n = brute ? n_of_brute(gamma, eta, level_r, opts)
                                : n_of(gamma, eta, level_r, opts);
            out << n.get_str() << "\n";
            return 0;
        }
        if (kernel->parsed()) {
            KernelCheckReport rep = kernel_order_check(dim_n, prime, layer_i, exhaustive,
                                                       samples, seed);
            emit(rep.to_json(), out, "");
            return rep.pass() ? 0 : 1;
        }
        if (vdw->parsed()) {
            VdwResult res = vdw_number(colors, k, cap);
            emit(res.to_json(), out, "");
            if (!res.w.has_value()) {
                err << "unknown above cap " << cap << "\n";
                return 3;
            }
            return 0;
        }
        if (transfer->parsed()) {
            ProgressionWitness w = ProgressionWitness::from_json(load_json_file(witness_file));
            nlohmann::json mj = load_json_file(map_file);
            TransferMap tm;
            tm.d_m = dm;
            tm.d_mp = dmp;
            if (mj.is_array()) {
                for (const auto& pair : mj)
                    tm.assignment.emplace_back(pair.at(0).get<long>(), pair.at(1).get<long>());
            } else {
                TransferMap parsed = TransferMap::from_json(mj);
                tm.assignment = parsed.assignment;
                tm.d = parsed.d;
                tm.d_prime = parsed.d_prime;
            }
            TransferredProgression res = transfer_progression(w, tm, k, build_opts());
            emit(res.to_json(), out, out_file);
            return 0;
        }
        if (density->parsed()) {
            DensityReport rep = prime_density_report(mpz_class(disc), bound);
            emit(rep.to_json(), out, "");
            return 0;
        }
    } catch (const cap_exceeded& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace apgeo
