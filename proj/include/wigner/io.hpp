#pragma once

#include "wigner/grid.hpp"
#include "wigner/phase_field.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace wigner::io {

// Little-endian layout: int64 nx, int64 nk, f64 x_min, x_max, k_min, k_max, eps,
// int64 flags (bit 0 complex, bit 1 scaled), then values with x as the outer index.
void write_binary(std::ostream& os, const RealField& W);
void write_binary(std::ostream& os, const ComplexPhaseField& W);
std::variant<RealField, ComplexPhaseField> read_binary(std::istream& is);

// Columns x,k,value (plus imag for complex fields).
void write_csv(std::ostream& os, const RealField& W);
void write_csv(std::ostream& os, const ComplexPhaseField& W);

// Snapshot: int64 nx, f64 x_min, x_max, eps, t, then interleaved re/im.
void write_snapshot(std::ostream& os, const ComplexField& psi, double t);
ComplexField read_snapshot(std::istream& is, double* t = nullptr);

// Plain CSV table with a header row; numbers written with 17 significant digits.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header);
    CsvWriter& operator<<(double v);
    CsvWriter& operator<<(long long v);
    CsvWriter& operator<<(int v) { return *this << static_cast<long long>(v); }
    CsvWriter& operator<<(const std::string& v);
    void end_row();

private:
    std::ostream& os_;
    std::size_t columns_;
    std::size_t in_row_ = 0;
    void sep();
};

std::string format_double(double v);

void write_file(const std::filesystem::path& p, const std::string& content);

}  // namespace wigner::io
