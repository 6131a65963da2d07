#pragma once

#include <string>
#include <vector>

#include "csv.hpp"

namespace qui::cli {

struct SweepConfig {
    int grid_points = 101;
    double x_min = 0.0;
    double x_max = 1.0;
    std::vector<std::string> columns; // empty: the command's default set
    bool emit_closed_form = true;
    bool emit_numeric = false;

    /// DomainError on grid_points < 2, x outside [0, 1] or x_min >= x_max.
    void validate() const;
    std::vector<double> grid() const;
};

/// x,l1,l_new,u_new,u1[,..._num] over the zeta family.
Table zeta_sweep(const SweepConfig& config);

/// x,u_old_qsr,v_new_qsr[,per-starter rates][,..._num] over the xi family.
Table qsr_sweep(const SweepConfig& config);

} // namespace qui::cli
