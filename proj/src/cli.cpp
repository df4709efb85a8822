#include "oddcover/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "oddcover/covering.hpp"
#include "oddcover/io.hpp"
#include "oddcover/spin_residue.hpp"

namespace oddcover::cli
{

namespace
{

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

template <class T> T parse_number(const std::string &s, const char *what)
{
    T value{};
    const auto *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc() || ptr != end) {
        throw Error(ErrorCode::ParseError, std::string("cannot parse ") + what + " from \"" + s + "\"");
    }
    return value;
}

int resolve_jobs(const std::optional<int> &jobs)
{
    if (jobs) {
        if (*jobs < 1) {
            throw Error(ErrorCode::ParseError, "--jobs must be positive");
        }
        return *jobs;
    }
    if (const char *env = std::getenv("ODDCOVER_JOBS"); env && *env) {
        const int n = parse_number<int>(env, "ODDCOVER_JOBS");
        if (n < 1) {
            throw Error(ErrorCode::ParseError, "ODDCOVER_JOBS must be positive");
        }
        return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void emit(const RunConfig &config, std::ostream &out, const std::string &text)
{
    if (config.out.empty()) {
        out << text;
    } else {
        write_text_file(config.out, text);
    }
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

RamificationProfile required_profile(const RunConfig &config)
{
    if (!config.profile) {
        throw Error(ErrorCode::InvalidProfile, config.subcommand + " needs --profile");
    }
    return RamificationProfile::make(config.genus, *config.profile);
}

int run_profiles(const RunConfig &config, std::ostream &out)
{
    const auto profiles = enumerate_profiles(config.genus);
    if (config.format == "csv") {
        std::string text = "profile,parity,h0\r\n";
        for (const auto &p : profiles) {
            std::string key;
            for (std::size_t i = 0; i < p.n.size(); ++i) {
                key += (i ? "," : "") + std::to_string(p.n[i]);
            }
            const auto s = spin_parity(p);
            text += csv_field(key) + "," + std::string(to_string(s.parity)) + "," + std::to_string(s.h0) + "\r\n";
        }
        emit(config, out, text);
        return Success;
    }
    Json rows = Json::array();
    for (const auto &p : profiles) {
        rows.push_back(Json{{"n", p.n}, {"spin", to_json(spin_parity(p))}});
    }
    emit(config, out, dump(Json{{"g", config.genus}, {"count", profiles.size()}, {"profiles", rows}}));
    return Success;
}

int run_build(const RunConfig &config, std::ostream &out)
{
    const auto profile = required_profile(config);
    const auto tuple = build_tuple(profile, config.seed, config.max_attempts);
    const auto report = verify_cover(tuple);
    if (config.format == "csv") {
        emit(config, out, covering_csv_header() + covering_csv_row(report));
    } else {
        emit(config, out,
             dump(Json{{"seed", config.seed},
                       {"max_attempts", config.max_attempts},
                       {"profile", to_json(profile)},
                       {"tuple", to_json(tuple)},
                       {"report", to_json(report)}}));
    }
    return report.all_pass() ? Success : VerificationFailed;
}

int run_verify(const RunConfig &config, std::ostream &out)
{
    const auto doc = read_json_file(config.in);
    // Accept either a bare tuple or the document written by `build`.
    const auto tuple = tuple_from_json(doc.is_object() && doc.contains("tuple") ? doc.at("tuple") : doc);
    const auto report = verify_cover(tuple);
    if (config.format == "csv") {
        emit(config, out, covering_csv_header() + covering_csv_row(report));
    } else {
        emit(config, out, dump(to_json(report)));
    }
    return report.all_pass() ? Success : VerificationFailed;
}

int run_census(const RunConfig &config, std::ostream &out)
{
    EnumerationTask task;
    task.g = config.genus;
    if (config.profile) {
        task.profile = RamificationProfile{config.genus, *config.profile};
    }
    task.require_transitive = !config.include_nontransitive;
    task.shard = config.shard.value_or(Shard{});
    if (!config.resume.empty()) {
        task.checkpoint = checkpoint_from_json(read_json_file(config.resume));
    }

    CensusOptions options;
    options.jobs = resolve_jobs(config.jobs);
    options.verify_each = config.verify_each;
    if (!config.checkpoint.empty()) {
        options.on_checkpoint = [path = config.checkpoint](const Checkpoint &c) { write_text_file(path, dump(to_json(c))); };
    }
    const auto census = count_classes(task, options);

    bool failures = false;
    for (const auto &[key, pc] : census.counts) {
        failures = failures || pc.verify_failures > 0;
    }
    if (config.format == "csv") {
        emit(config, out, census_to_csv(census));
    } else {
        const auto body = census_to_json(census);
        Json j{{"g", census.g}};
        j["filter"] = config.profile ? Json(*config.profile) : Json(nullptr);
        j["require_transitive"] = task.require_transitive;
        j["shard"] = Json::array({task.shard.index + 1, task.shard.total});
        j["verify_each"] = config.verify_each;
        j["profiles"] = body.at("profiles");
        j["reference_fibre_degree"] = body.at("reference_fibre_degree");
        j["metadata"] = Json{{"wall_time_seconds", census.wall_time_seconds}, {"jobs", options.jobs}};
        emit(config, out, dump(j));
    }
    return failures ? VerificationFailed : Success;
}

int run_elliptic(const RunConfig &config, std::ostream &out)
{
    const auto lat = lattice_init(*config.tau);
    const auto solutions = solve_theta(lat);
    bool all_certified = true;
    Json rows = Json::array();
    std::string csv = "orbit_id,residual,a1_re,a1_im,a2_re,a2_im,a3_re,a3_im,a4_re,a4_im,certified\r\n";
    for (const auto &s : solutions) {
        const auto cert = certify_solution(lat, s);
        all_certified = all_certified && cert.passed();
        auto row = to_json(s);
        row["certificate"] = to_json(cert);
        rows.push_back(row);

        std::ostringstream line;
        line.precision(17);
        line << s.orbit_id << "," << s.residual;
        for (const auto &x : s.a) {
            line << "," << x.real() << "," << x.imag();
        }
        line << "," << (cert.passed() ? 1 : 0) << "\r\n";
        csv += line.str();
    }
    if (config.format == "csv") {
        emit(config, out, csv);
    } else {
        emit(config, out, dump(Json{{"tau", to_json(lat.tau)}, {"solutions", rows}}));
    }
    return all_certified ? Success : VerificationFailed;
}

int run_quadric(const RunConfig &config, std::ostream &out)
{
    emit(config, out, dump(to_json(residue_quadric(required_profile(config)))));
    return Success;
}

void report_error(std::ostream &err, const std::string &code, const std::string &message, int exit)
{
    err << Json{{"error", Json{{"code", code}, {"message", message}, {"exit_code", exit}}}}.dump() << "\n";
}

} // namespace

int exit_code(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ConditionsFailed:
    case ErrorCode::SolveFailed:
    case ErrorCode::CertificateFailed:
    case ErrorCode::PathTooCloseToPole:
    case ErrorCode::NotTransitive:
    case ErrorCode::NotOddProfile:
        return VerificationFailed;
    case ErrorCode::SearchSpaceTooLarge:
    case ErrorCode::TransitivityNotFound:
        return ResourceRefused;
    default:
        return InvalidInput;
    }
}

std::vector<int> parse_profile(const std::string &s)
{
    std::vector<int> n;
    for (const auto &part : split(s, ',')) {
        n.push_back(parse_number<int>(part, "profile entry"));
    }
    return n;
}

Complex parse_tau(const std::string &s)
{
    const auto parts = split(s, ',');
    if (parts.size() != 2) {
        throw Error(ErrorCode::ParseError, "--tau expects re,im");
    }
    return {parse_number<double>(parts[0], "Re tau"), parse_number<double>(parts[1], "Im tau")};
}

Shard parse_shard(const std::string &s)
{
    const auto parts = split(s, '/');
    if (parts.size() != 2) {
        throw Error(ErrorCode::InvalidShard, "--shard expects i/k");
    }
    const int i = parse_number<int>(parts[0], "shard index");
    const int k = parse_number<int>(parts[1], "shard count");
    if (k < 1 || i < 1 || i > k) {
        throw Error(ErrorCode::InvalidShard, "--shard needs 1 <= i <= k, got " + s);
    }
    return Shard{i - 1, k};
}

void validate(const RunConfig &c)
{
    static const std::vector<std::string> known{"profiles", "build", "verify", "census", "elliptic", "quadric"};
    if (std::find(known.begin(), known.end(), c.subcommand) == known.end()) {
        throw Error(ErrorCode::ParseError, "unknown subcommand \"" + c.subcommand + "\"");
    }
    const auto reject = [&](bool present, const char *flag) {
        if (present) {
            throw Error(ErrorCode::ParseError, std::string(flag) + " is not valid for " + c.subcommand);
        }
    };
    const bool census = c.subcommand == "census";
    reject(c.tau.has_value() && c.subcommand != "elliptic", "--tau");
    reject(!c.in.empty() && c.subcommand != "verify", "--in");
    reject(c.profile.has_value() && (c.subcommand == "profiles" || c.subcommand == "verify" || c.subcommand == "elliptic"), "--profile");
    reject(!census && c.shard.has_value(), "--shard");
    reject(!census && c.jobs.has_value(), "--jobs");
    reject(!census && !c.resume.empty(), "--resume");
    reject(!census && !c.checkpoint.empty(), "--checkpoint");
    reject(!census && c.verify_each, "--verify");
    reject(!census && c.include_nontransitive, "--all");
    if (c.format != "json" && c.format != "csv") {
        throw Error(ErrorCode::ParseError, "--format must be json or csv");
    }
    reject(c.format == "csv" && c.subcommand == "quadric", "--format csv");
    if (c.subcommand == "elliptic" && !c.tau) {
        throw Error(ErrorCode::ParseError, "elliptic needs --tau");
    }
    if (c.subcommand == "verify" && c.in.empty()) {
        throw Error(ErrorCode::ParseError, "verify needs --in");
    }
    if (c.max_attempts < 1) {
        throw Error(ErrorCode::ParseError, "--max-attempts must be positive");
    }
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err)
{
    try {
        validate(config);
        if (config.subcommand == "profiles") {
            return run_profiles(config, out);
        }
        if (config.subcommand == "build") {
            return run_build(config, out);
        }
        if (config.subcommand == "verify") {
            return run_verify(config, out);
        }
        if (config.subcommand == "census") {
            return run_census(config, out);
        }
        if (config.subcommand == "elliptic") {
            return run_elliptic(config, out);
        }
        return run_quadric(config, out);
    } catch (const Error &e) {
        const int code = exit_code(e.code());
        report_error(err, std::string(to_string(e.code())), e.what(), code);
        return code;
    } catch (const std::exception &e) {
        report_error(err, "Unexpected", e.what(), InvalidInput);
        return InvalidInput;
    }
}

int main(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    RunConfig config;
    std::string profile, tau, shard;

    CLI::App app{"Hyperelliptic odd coverings: monodromy construction, census and elliptic solutions", "oddcover"};
    app.require_subcommand(1);

    const auto common = [&](CLI::App *sub) {
        sub->add_option("-o,--out", config.out, "Output file (default: stdout)");
        sub->add_option("--format", config.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };
    const auto genus = [&](CLI::App *sub) { sub->add_option("g", config.genus, "Genus")->required(); };

    auto *profiles = app.add_subcommand("profiles", "List ramification profiles and spin parities");
    genus(profiles);
    common(profiles);

    auto *build = app.add_subcommand("build", "Construct a monodromy tuple and verify it");
    genus(build);
    build->add_option("--profile", profile, "n_1,...,n_{2g+2}")->required();
    build->add_option("--seed", config.seed, "RNG seed");
    build->add_option("--max-attempts", config.max_attempts, "Search attempts before giving up");
    common(build);

    auto *verify = app.add_subcommand("verify", "Verify a tuple JSON file");
    verify->add_option("--in", config.in, "Tuple or build output")->required();
    common(verify);

    auto *census = app.add_subcommand("census", "Exhaustive tuple and class census");
    genus(census);
    census->add_option("--profile", profile, "Only count this profile (as a multiset)");
    census->add_option("--shard", shard, "Work split i/k, 1 <= i <= k");
    census->add_option("--resume", config.resume, "Checkpoint file to resume from");
    census->add_option("--checkpoint", config.checkpoint, "Checkpoint file to update while running");
    census->add_option("-j,--jobs", config.jobs, "Worker threads (default: ODDCOVER_JOBS or all cores)");
    census->add_flag("--verify", config.verify_each, "Run the covering verifier on every tuple");
    census->add_flag("--all", config.include_nontransitive, "Include non-transitive tuples");
    common(census);

    auto *elliptic = app.add_subcommand("elliptic", "Solve for the four residue vectors of a lattice");
    elliptic->add_option("--tau", tau, "re,im with im > 0")->required();
    common(elliptic);

    auto *quadric = app.add_subcommand("quadric", "Residue quadric of a profile");
    genus(quadric);
    quadric->add_option("--profile", profile, "n_1,...,n_{2g+2}")->required();
    quadric->add_option("-o,--out", config.out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return Success;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return Success;
    } catch (const CLI::ParseError &e) {
        report_error(err, "ParseError", e.what(), InvalidInput);
        return InvalidInput;
    }

    try {
        config.subcommand = app.get_subcommands().front()->get_name();
        if (!profile.empty()) {
            config.profile = parse_profile(profile);
        }
        if (!tau.empty()) {
            config.tau = parse_tau(tau);
        }
        if (!shard.empty()) {
            config.shard = parse_shard(shard);
        }
    } catch (const Error &e) {
        report_error(err, std::string(to_string(e.code())), e.what(), InvalidInput);
        return InvalidInput;
    }
    return run(config, out, err);
}

} // namespace oddcover::cli
