#include "sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>

#include "qui/bounds.hpp"
#include "qui/errors.hpp"
#include "qui/qsr.hpp"
#include "qui/qstate.hpp"

namespace qui::cli {

namespace {

// Rows are independent; workers pull indices and write into their own slot.
std::vector<std::vector<double>> parallel_rows(std::size_t n, const std::function<std::vector<double>(std::size_t)>& f) {
    std::vector<std::vector<double>> rows(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                rows[i] = f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(n, 1));
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < workers; ++k) {
        pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return rows;
}

// Column selection in canonical order; unknown names are input errors.
std::vector<std::string> select(const std::vector<std::string>& requested, const std::vector<std::string>& known,
                                const std::vector<std::string>& fallback) {
    if (requested.empty()) {
        return fallback;
    }
    for (const auto& r : requested) {
        if (std::find(known.begin(), known.end(), r) == known.end()) {
            raise(ErrorCode::ParseError, "unknown column '" + r + "'");
        }
    }
    std::vector<std::string> out;
    for (const auto& k : known) {
        if (std::find(requested.begin(), requested.end(), k) != requested.end()) {
            out.push_back(k);
        }
    }
    return out;
}

Table assemble(const SweepConfig& config, const std::vector<std::string>& names,
               const std::function<std::vector<double>(double, bool)>& values, const std::vector<std::string>& all) {
    Table t;
    t.header.push_back("x");
    if (config.emit_closed_form) {
        t.header.insert(t.header.end(), names.begin(), names.end());
    }
    if (config.emit_numeric) {
        for (const auto& n : names) {
            t.header.push_back(n + "_num");
        }
    }
    const auto xs = config.grid();
    t.rows = parallel_rows(xs.size(), [&](std::size_t i) {
        std::vector<double> row{xs[i]};
        auto pick = [&](const std::vector<double>& v) {
            for (const auto& n : names) {
                row.push_back(v[static_cast<std::size_t>(std::find(all.begin(), all.end(), n) - all.begin())]);
            }
        };
        if (config.emit_closed_form) {
            pick(values(xs[i], false));
        }
        if (config.emit_numeric) {
            pick(values(xs[i], true));
        }
        return row;
    });
    return t;
}

} // namespace

void SweepConfig::validate() const {
    if (grid_points < 2) {
        raise(ErrorCode::DomainError, "grid needs at least 2 points");
    }
    if (!(x_min >= 0.0 && x_max <= 1.0 && x_min < x_max)) {
        raise(ErrorCode::DomainError, "need 0 <= x_min < x_max <= 1");
    }
    if (!emit_closed_form && !emit_numeric) {
        raise(ErrorCode::DomainError, "nothing to emit");
    }
}

std::vector<double> SweepConfig::grid() const {
    std::vector<double> xs(static_cast<std::size_t>(grid_points));
    const double step = (x_max - x_min) / (grid_points - 1);
    for (int i = 0; i < grid_points; ++i) {
        xs[static_cast<std::size_t>(i)] = i + 1 == grid_points ? x_max : x_min + i * step;
    }
    return xs;
}

Table zeta_sweep(const SweepConfig& config) {
    config.validate();
    const std::vector<std::string> all{"l1", "l_new", "u_new", "u1"};
    const auto names = select(config.columns, all, all);
    const CommonSubspaceCert cert = zeta_common_cert();
    return assemble(config, names, [&](double x, bool numeric) -> std::vector<double> {
        const ZetaParams params = zeta_from_x(x);
        if (!numeric) {
            const auto c = zeta_closed_forms(params);
            return {c.l1, c.l_new, c.u_new, c.u1};
        }
        const PureState psi = make_zeta(params);
        return {bound_l1(psi), bound_l_new(make_zeta_decomposition(params)), bound_u_new(psi, cert), bound_u1(psi)};
    }, all);
}

Table qsr_sweep(const SweepConfig& config) {
    config.validate();
    const std::vector<std::string> all{"u_old_qsr", "v_new_qsr", "u1_qsr", "u2_qsr",
                                       "u3_qsr",    "v1_qsr",    "v2_qsr", "v3_qsr"};
    std::vector<std::string> requested;
    for (const auto& c : config.columns) {
        if (c == "starters") {
            requested.insert(requested.end(), all.begin() + 2, all.end());
        } else {
            requested.push_back(c);
        }
    }
    const auto names = select(requested, all, {all[0], all[1]});
    const ThreePartyCert cert = xi_common_cert();
    return assemble(config, names, [&](double x, bool numeric) -> std::vector<double> {
        const ZetaParams params = zeta_from_x(x);
        const QsrRateReport r = numeric ? qsr_numeric(make_xi(params), cert) : qsr_closed_forms(params);
        return {r.u_old_min, r.v_new_min, r.u[0], r.u[1], r.u[2], r.v[0], r.v[1], r.v[2]};
    }, all);
}

} // namespace qui::cli
