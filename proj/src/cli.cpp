#include "lifo/cli.hpp"

#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "lifo/certificates.hpp"
#include "lifo/cyclerank.hpp"
#include "lifo/digraph.hpp"
#include "lifo/equiv.hpp"
#include "lifo/errors.hpp"
#include "lifo/game.hpp"
#include "lifo/io.hpp"

namespace lifo {

namespace {

void save_certificate(const Digraph& g, CertificatePayload payload, const std::string& path) {
    write_text_file(path, encode_certificate(make_certificate(g, std::move(payload))));
}

// Decode plus the binding check; the hash must match before any use.
CertificateDocument load_certificate_for(const Digraph& g, const std::string& path) {
    CertificateDocument doc = decode_certificate(read_text_file(path));
    std::string expected = graph_hash(g);
    if (doc.graph_hash != expected)
        throw CertificateError("graph hash mismatch: " + path + " was made for " +
                               doc.graph_hash + " but the input hashes to " + expected);
    return doc;
}

int do_rank(const std::string& file, const std::string& witness_out) {
    Digraph g = load_graph_file(file);
    CycleRankSolver solver(g);
    std::cout << solver.rank() << "\n";
    if (!witness_out.empty()) save_certificate(g, solver.witness(), witness_out);
    return 0;
}

int do_solve(const std::string& file, const std::string& variant_str, bool monotone,
             bool stationary, bool experimental, const std::string& strategy_out) {
    GameVariant variant = variant_from_name(variant_str);
    if (stationary && variant != GameVariant::vsc && !experimental) {
        std::cerr << "stationary search numbers are only established for variant vsc; pass "
                     "--experimental to compute them for variant "
                  << variant_str << "\n";
        return 2;
    }
    Digraph g = load_graph_file(file);
    SolveReport rep = solve(g, {variant, monotone, stationary});
    std::cout << rep.search_number << "\n";
    if (!strategy_out.empty()) save_certificate(g, rep, strategy_out);
    return 0;
}

int do_numbers(const std::string& file) {
    Digraph g = load_graph_file(file);
    SearchNumbers nums = all_search_numbers(g);
    for (auto [name, value] : nums.named()) std::cout << name << "=" << value << "\n";
    std::cout << "1+cr=" << cycle_rank(g) + 1 << "\n";
    return 0;
}

int do_shelter(const std::string& file, const std::string& out) {
    Digraph g = load_graph_file(file);
    StrongShelter s = build_shelter(g);
    int thickness = verify_shelter(g, s);
    std::cout << "strong shelter with " << s.sets.size() << " sets, thickness " << thickness
              << "\n";
    if (!out.empty()) save_certificate(g, s, out);
    return 0;
}

int do_haven(const std::string& file, const std::string& out) {
    Digraph g = load_graph_file(file);
    LifoHaven h = shelter_to_haven(g, build_shelter(g));
    std::cout << "haven of order " << h.order << " with " << h.table.size() << " table entries\n";
    if (!out.empty()) save_certificate(g, h, out);
    return 0;
}

int do_script(const std::string& file, const std::string& out) {
    Digraph g = load_graph_file(file);
    CycleRankSolver solver(g);
    SearcherScript sc = synthesize_search_script(g, solver.witness());
    ReplayResult rr = replay_script(g, GameVariant::i, sc);
    std::cout << "script with " << sc.moves.size() << " moves; captures with stack depth "
              << rr.max_depth << "\n";
    if (!out.empty()) save_certificate(g, sc, out);
    return 0;
}

int do_verify(const std::string& file, const std::string& cert_path) {
    Digraph g = load_graph_file(file);
    CertificateDocument doc = decode_certificate(read_text_file(cert_path));
    std::cout << verify_certificate(g, doc) << "\n";
    return 0;
}

int do_play(const std::string& file, int k, const std::string& searcher_path,
            const std::string& fugitive_path) {
    Digraph g = load_graph_file(file);
    CertificateDocument sdoc = load_certificate_for(g, searcher_path);
    SearcherAgent agent;
    GameVariant variant;
    if (const auto* rep = std::get_if<SolveReport>(&sdoc.payload)) {
        agent = rep->strategy;
        variant = rep->variant;
    } else if (const auto* sc = std::get_if<SearcherScript>(&sdoc.payload)) {
        agent = *sc;
        // Scripts carry no variant: referee against the haven fugitive in
        // vsc when one is given, otherwise replay invisibly.
        variant = fugitive_path.empty() ? GameVariant::i : GameVariant::vsc;
    } else {
        std::cerr << "--searcher must be a solve_report or script certificate, got "
                  << kind_name(sdoc.kind()) << "\n";
        return 2;
    }
    std::optional<FugitiveStrategy> rho;
    if (!fugitive_path.empty()) {
        CertificateDocument fdoc = load_certificate_for(g, fugitive_path);
        const auto* h = std::get_if<LifoHaven>(&fdoc.payload);
        if (!h) {
            std::cerr << "--fugitive must be a haven certificate, got " << kind_name(fdoc.kind())
                      << "\n";
            return 2;
        }
        rho = haven_to_fugitive_strategy(g, *h);
    } else if (is_visible(variant)) {
        std::cerr << "variant " << variant_name(variant) << " needs --fugitive\n";
        return 2;
    }
    PlayTrace t = play(g, variant, k, agent, rho ? &*rho : nullptr);
    std::cout << "variant " << variant_name(variant) << ", k=" << t.k << "\n";
    for (size_t i = 0; i < t.steps.size(); ++i)
        std::cout << "step " << i << ": " << t.steps[i].to_string() << "\n";
    std::cout << (t.winner == Winner::searcher ? "searcher" : "fugitive") << " wins: " << t.note
              << "\n";
    return 0;
}

bool parse_random_spec(const std::string& spec, int& n, double& p, int& count) {
    std::istringstream ss(spec);
    char c1 = 0, c2 = 0;
    if (!(ss >> n >> c1 >> p >> c2 >> count) || c1 != ',' || c2 != ',') return false;
    std::string rest;
    ss >> rest;
    return rest.empty();
}

int do_equiv(int exhaustive_n, const std::string& random_spec, uint64_t seed) {
    HarnessResult res;
    if (exhaustive_n > 0) {
        res = run_exhaustive(exhaustive_n);
    } else {
        int n = 0, count = 0;
        double p = 0.0;
        if (!parse_random_spec(random_spec, n, p, count)) {
            std::cerr << "--random expects \"n,p,count\", e.g. --random 6,0.5,100\n";
            return 2;
        }
        if (n < 1 || n > Digraph::kMaxVertices || p < 0.0 || p > 1.0 || count < 0) {
            std::cerr << "--random needs n in [1, 64], p in [0, 1] and a nonnegative count\n";
            return 2;
        }
        res = run_random(n, p, count, seed);
    }
    if (res.pass) {
        std::cout << "checked " << res.checked
                  << " instances: all nine search numbers, certificates and plays agree with "
                     "1 + cycle rank\n";
        return 0;
    }
    std::cout << "equivalence failed at " << res.detail << "\n";
    return 1;
}

} // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"cycle rank, LIFO graph searching games, and dual certificates"};
    app.name("lifosearch");
    app.require_subcommand(1);
    int exit_code = 0;

    const char* file_help = "input graph, edge list or DOT subset";

    std::string rank_file, rank_witness;
    auto* rank_cmd = app.add_subcommand("rank", "print the cycle rank");
    rank_cmd->add_option("FILE", rank_file, file_help)->required();
    rank_cmd->add_option("--witness", rank_witness,
                         "write the elimination forest certificate here");
    rank_cmd->callback([&] { exit_code = do_rank(rank_file, rank_witness); });

    std::string solve_file, solve_variant, solve_strategy;
    bool solve_monotone = false, solve_stationary = false, solve_experimental = false;
    auto* solve_cmd = app.add_subcommand("solve", "print a LIFO search number");
    solve_cmd->add_option("FILE", solve_file, file_help)->required();
    solve_cmd->add_option("--variant", solve_variant, "game variant")
        ->required()
        ->check(CLI::IsMember({"i", "isc", "v", "vsc"}));
    solve_cmd->add_flag("--monotone", solve_monotone,
                        "restrict the searcher to space-shrinking moves");
    solve_cmd->add_flag("--stationary", solve_stationary,
                        "forbid removals before the capture");
    solve_cmd->add_flag("--experimental", solve_experimental,
                        "allow --stationary outside variant vsc");
    solve_cmd->add_option("--strategy", solve_strategy, "write the solve report here");
    solve_cmd->callback([&] {
        exit_code = do_solve(solve_file, solve_variant, solve_monotone, solve_stationary,
                             solve_experimental, solve_strategy);
    });

    std::string numbers_file;
    auto* numbers_cmd =
        app.add_subcommand("numbers", "print all nine search numbers and 1 + cycle rank");
    numbers_cmd->add_option("FILE", numbers_file, file_help)->required();
    numbers_cmd->callback([&] { exit_code = do_numbers(numbers_file); });

    std::string shelter_file, shelter_out;
    auto* shelter_cmd = app.add_subcommand("shelter", "build a maximum-thickness strong shelter");
    shelter_cmd->add_option("FILE", shelter_file, file_help)->required();
    shelter_cmd->add_option("-o,--out", shelter_out, "write the shelter certificate here");
    shelter_cmd->callback([&] { exit_code = do_shelter(shelter_file, shelter_out); });

    std::string haven_file, haven_out;
    auto* haven_cmd = app.add_subcommand("haven", "build a maximum-order LIFO haven");
    haven_cmd->add_option("FILE", haven_file, file_help)->required();
    haven_cmd->add_option("-o,--out", haven_out, "write the haven certificate here");
    haven_cmd->callback([&] { exit_code = do_haven(haven_file, haven_out); });

    std::string script_file, script_out;
    auto* script_cmd =
        app.add_subcommand("script", "synthesize a monotone searcher script of minimum depth");
    script_cmd->add_option("FILE", script_file, file_help)->required();
    script_cmd->add_option("-o,--out", script_out, "write the script certificate here");
    script_cmd->callback([&] { exit_code = do_script(script_file, script_out); });

    std::string verify_file, verify_cert;
    auto* verify_cmd = app.add_subcommand("verify", "re-check a certificate against a graph");
    verify_cmd->add_option("FILE", verify_file, file_help)->required();
    verify_cmd->add_option("CERT", verify_cert, "certificate JSON file")->required();
    verify_cmd->callback([&] { exit_code = do_verify(verify_file, verify_cert); });

    std::string play_file, play_searcher, play_fugitive;
    int play_k = 0;
    auto* play_cmd = app.add_subcommand("play", "referee one full game and print the trace");
    play_cmd->add_option("FILE", play_file, file_help)->required();
    play_cmd->add_option("--k", play_k, "number of searchers")
        ->required()
        ->check(CLI::NonNegativeNumber);
    play_cmd->add_option("--searcher", play_searcher, "solve_report or script certificate")
        ->required();
    play_cmd->add_option("--fugitive", play_fugitive,
                         "haven certificate; omitted means the canonical invisible fugitive");
    play_cmd->callback(
        [&] { exit_code = do_play(play_file, play_k, play_searcher, play_fugitive); });

    int equiv_exhaustive = 0;
    std::string equiv_random;
    uint64_t equiv_seed = 0;
    auto* equiv_cmd = app.add_subcommand(
        "equiv-check", "check that search numbers, certificates and plays match 1 + cycle rank");
    auto* ex_opt = equiv_cmd->add_option("--exhaustive-n", equiv_exhaustive,
                                         "every labeled digraph with 1..N vertices")
                       ->check(CLI::Range(1, 5));
    auto* rnd_opt =
        equiv_cmd->add_option("--random", equiv_random, "random instances, spec \"n,p,count\"");
    ex_opt->excludes(rnd_opt);
    rnd_opt->excludes(ex_opt);
    equiv_cmd->add_option("--seed", equiv_seed, "base seed; instance i uses seed + i");
    equiv_cmd->callback([&] {
        if (equiv_exhaustive == 0 && equiv_random.empty())
            throw CLI::RequiredError("equiv-check: one of --exhaustive-n or --random");
        exit_code = do_equiv(equiv_exhaustive, equiv_random, equiv_seed);
    });

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("lifosearch");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CertificateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const StrategyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

} // namespace lifo
