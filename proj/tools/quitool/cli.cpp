#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "qui/bounds.hpp"
#include "qui/errors.hpp"
#include "qui/exchange_exact.hpp"
#include "qui/io.hpp"
#include "qui/qstate.hpp"
#include "qui/subspace.hpp"
#include "sweeps.hpp"

namespace qui::cli {

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NotCommon:
    case ErrorCode::NumericalMismatch:
        return kVerificationFailure;
    case ErrorCode::ProtocolError:
        return kProtocolFailure;
    default:
        return kInputError;
    }
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        raise(ErrorCode::ParseError, "cannot write '" + path + "'");
    }
    return f;
}

void write_json_file(const nlohmann::json& j, const std::string& path) { open_out(path) << j.dump(2) << '\n'; }

std::string indices_text(const std::vector<std::size_t>& idx) {
    std::string s = "{";
    for (std::size_t k = 0; k < idx.size(); ++k) {
        s += (k ? "," : "") + std::to_string(idx[k]);
    }
    return s + "}";
}

CommonSubspaceCert cert_for(const PureState& psi, const std::string& path) {
    const std::size_t d = psi.layout().dim(kPartyA);
    return path.empty() ? CommonSubspaceCert::none(d) : load_cert(path, d);
}

struct Options {
    std::string state;
    std::string cert;
    std::string spec;
    std::string out;
    std::vector<std::string> columns;
    SweepConfig sweep;
    bool search = false;
    bool json = false;
    std::string family;
    double x = 0.5;
    std::string cert_out;
    std::string spec_out;
};

int cmd_bounds(const Options& o, std::ostream& out) {
    const PureState psi = load_state(o.state);
    ReportInputs in;
    if (!o.cert.empty()) {
        in.cert = load_cert(o.cert, psi.layout().dim(kPartyA));
    }
    if (!o.spec.empty()) {
        in.spec = load_spec(o.spec);
    }
    const BoundReport r = full_report(psi, in);
    auto line = [&](const char* name, const std::optional<double>& v) {
        out << std::left << std::setw(9) << name << "= " << std::setw(16) << (v ? format_number(*v) : "n/a") << "# "
            << r.provenance.at(name) << '\n';
    };
    line("l1", r.l1);
    line("l2_found", r.l2_found);
    line("l_new", r.l_new);
    line("u_new", r.u_new);
    line("u1", r.u1);
    out << "chain    = " << (r.chain_ok ? "ok" : "VIOLATED") << '\n';
    if (!o.out.empty()) {
        write_json_file(report_to_json(r), o.out);
    }
    return r.chain_ok ? kOk : kVerificationFailure;
}

int cmd_sweep(Options o, std::ostream& out, bool qsr) {
    o.sweep.columns = o.columns;
    const Table t = qsr ? qsr_sweep(o.sweep) : zeta_sweep(o.sweep);
    if (o.out.empty()) {
        t.write(out);
    } else {
        auto f = open_out(o.out);
        t.write(f);
    }
    return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const PureState psi = load_state(o.state);
    if (o.search) {
        const auto found = search_basis_common(psi);
        if (found.empty()) {
            out << "no common subspace found\n";
        }
        nlohmann::json list = nlohmann::json::array();
        for (const auto& c : found) {
            out << "common " << indices_text(c.indices) << "  d_C=" << c.subspace_dim()
                << "  residuals " << format_number(c.residual_decomposition) << ' '
                << format_number(c.residual_symmetry) << '\n';
            list.push_back(cert_to_json(c));
        }
        if (!o.out.empty()) {
            write_json_file(list, o.out);
        }
        return kOk;
    }
    if (o.cert.empty()) {
        raise(ErrorCode::ParseError, "verify-subspace needs --cert or --search");
    }
    const CommonSubspaceCert c = verify_common(psi, load_cert(o.cert, psi.layout().dim(kPartyA)));
    out << "decomposition residual = " << format_number(c.residual_decomposition) << '\n'
        << "symmetry residual      = " << format_number(c.residual_symmetry) << '\n'
        << "verdict                = " << (c.verified ? "common" : "NOT common") << '\n';
    if (!o.out.empty()) {
        write_json_file(cert_to_json(c), o.out);
    }
    return c.verified ? kOk : kVerificationFailure;
}

int cmd_sse(const Options& o, std::ostream& out) {
    const PureState psi = load_state(o.state);
    const CommonSubspaceCert cert = cert_for(psi, o.cert);
    const SseOutcome r = run_exact_sse(psi, cert);
    const double naive = naive_swap_cost(psi.layout().dim(kPartyA));
    out << "subspace dimension     = " << cert.subspace_dim() << '\n'
        << "final-state distance   = " << format_number(r.distance) << '\n';
    for (const auto& e : r.ledger.entries()) {
        out << "ledger: " << e.step << "  " << to_string(e.mechanism) << "  dim " << e.teleport_dim << "  "
            << format_number(e.ebits) << " ebits (" << e.integer_ebits << " integer, " << e.classical_bits
            << " cbits)\n";
    }
    out << "cost                   = " << format_number(r.ledger.total()) << " ebits (" << r.ledger.integer_total()
        << " integer)\n"
        << "naive cost             = " << format_number(naive) << " ebits\n"
        << "savings                = " << format_number(naive - r.ledger.total()) << " ebits\n";
    if (!o.out.empty()) {
        write_json_file({{"distance", r.distance},
                         {"ledger", ledger_to_json(r.ledger)},
                         {"naive_cost", naive},
                         {"savings", naive - r.ledger.total()}},
                        o.out);
    }
    return kOk;
}

int cmd_generate(const Options& o, std::ostream& out) {
    std::optional<CommonSubspaceCert> cert;
    std::optional<DecompositionSpec> spec;
    PureState psi = [&] {
        if (o.family == "zeta") {
            const ZetaParams p = zeta_from_x(o.x);
            cert = zeta_common_cert();
            spec = make_zeta_decomposition(p);
            return make_zeta(p);
        }
        if (o.family == "xi") {
            cert = zeta_common_cert();
            return make_xi(zeta_from_x(o.x));
        }
        const NamedState n = parse_named_state(o.family);
        if (n == NamedState::GHZ3) {
            cert = CommonSubspaceCert::from_indices(2, {0, 1});
        }
        return make_named(n);
    }();
    save_state(psi, o.out);
    out << "wrote " << o.out << '\n';
    if (!o.cert_out.empty()) {
        if (!cert) {
            raise(ErrorCode::DomainError, "no known common subspace for '" + o.family + "'");
        }
        save_cert(*cert, o.cert_out);
        out << "wrote " << o.cert_out << '\n';
    }
    if (!o.spec_out.empty()) {
        if (!spec) {
            raise(ErrorCode::DomainError, "no known decomposition for '" + o.family + "'");
        }
        save_spec(*spec, o.spec_out);
        out << "wrote " << o.spec_out << '\n';
    }
    return kOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounds on quantum uncommon information", "quitool"};
    app.require_subcommand(1);
    Options o;

    auto* bounds = app.add_subcommand("bounds", "bound report for a state file");
    bounds->add_option("--state", o.state, "state file")->required();
    bounds->add_option("--cert", o.cert, "common-subspace certificate");
    bounds->add_option("--spec", o.spec, "declared decomposition for l_new");
    bounds->add_option("--out", o.out, "also write the report as JSON");

    auto add_sweep_flags = [&](CLI::App* cmd) {
        cmd->add_option("--grid", o.sweep.grid_points, "number of grid points")->capture_default_str();
        cmd->add_option("--x-min", o.sweep.x_min)->capture_default_str();
        cmd->add_option("--x-max", o.sweep.x_max)->capture_default_str();
        cmd->add_option("--columns", o.columns, "column selectors")->delimiter(',');
        cmd->add_flag("--numeric,!--no-numeric", o.sweep.emit_numeric, "add numerically evaluated columns");
        cmd->add_flag("--closed-form,!--no-closed-form", o.sweep.emit_closed_form, "emit closed-form columns")
            ->default_val(true);
        cmd->add_option("--out", o.out, "CSV destination (default stdout)");
    };
    auto* sweep = app.add_subcommand("sweep", "zeta-family bounds over x");
    add_sweep_flags(sweep);
    auto* qsr = app.add_subcommand("qsr-sweep", "xi-family rotation rates over x");
    add_sweep_flags(qsr);

    auto* verify = app.add_subcommand("verify-subspace", "check or search common subspaces");
    verify->add_option("--state", o.state)->required();
    auto* cert_opt = verify->add_option("--cert", o.cert);
    verify->add_flag("--search", o.search, "enumerate basis-subset common subspaces")->excludes(cert_opt);
    verify->add_option("--out", o.out);

    auto* sse = app.add_subcommand("sse-singleshot", "exact single-shot subspace exchange");
    sse->add_option("--state", o.state)->required();
    sse->add_option("--cert", o.cert, "omit for plain two-way teleportation");
    sse->add_option("--out", o.out);

    auto* gen = app.add_subcommand("generate", "write example state, cert and decomposition files");
    gen->add_option("--family", o.family, "zeta, xi, GHZ3, EPR or ProductEPR")->required();
    gen->add_option("--x", o.x)->capture_default_str();
    gen->add_option("--out", o.out)->required();
    gen->add_option("--cert-out", o.cert_out);
    gen->add_option("--spec-out", o.spec_out);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        if (*bounds) {
            return cmd_bounds(o, out);
        }
        if (*sweep) {
            return cmd_sweep(o, out, false);
        }
        if (*qsr) {
            return cmd_sweep(o, out, true);
        }
        if (*verify) {
            return cmd_verify(o, out);
        }
        if (*sse) {
            return cmd_sse(o, out);
        }
        return cmd_generate(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

} // namespace qui::cli
