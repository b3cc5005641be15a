#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hw/bounds.hpp"
#include "hw/path.hpp"

namespace hw {

/// Shortest faithful text for CSV/JSON output: 17 significant digits.
std::string format_number(double x);

/// Comma separated reals ("0.5, 1,2"). Throws DomainError on malformed entries.
std::vector<double> parse_list(std::string_view text);

std::vector<double> linspace(double first, double last, std::size_t n);
std::vector<double> logspace(double first, double last, std::size_t n);

struct DeltaPrimeRow {
    double rho;
    double delta_prime0;
};

void write_sweep_csv(std::ostream& os, std::span<const SweepCell> cells);
void write_bound_csv(std::ostream& os, std::span<const BoundCheckRow> rows);
void write_delta_prime_csv(std::ostream& os, std::span<const DeltaPrimeRow> rows);

}  // namespace hw
