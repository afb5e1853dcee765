#include "wigner/io.hpp"

#include "wigner/errors.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace wigner::io {

static_assert(std::endian::native == std::endian::little, "binary layout assumes a little-endian host");

namespace {

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw ConfigurationError("binary read: truncated stream");
    return v;
}

template <typename Scalar>
void write_field(std::ostream& os, const PhaseField<Scalar>& W, bool is_complex) {
    put<std::int64_t>(os, W.grid.x.n);
    put<std::int64_t>(os, W.grid.k.n);
    put<double>(os, W.grid.x.min);
    put<double>(os, W.grid.x.max);
    put<double>(os, W.grid.k.min);
    put<double>(os, W.grid.k.max);
    put<double>(os, W.grid.eps);
    put<std::int64_t>(os, (is_complex ? 1 : 0) | (W.scaled() ? 2 : 0));
    for (Index i = 0; i < W.grid.x.n; ++i)
        for (Index j = 0; j < W.grid.k.n; ++j) {
            if constexpr (std::is_same_v<Scalar, double>) {
                put<double>(os, W.values(i, j));
            } else {
                put<double>(os, W.values(i, j).real());
                put<double>(os, W.values(i, j).imag());
            }
        }
}

template <typename Scalar>
void write_field_csv(std::ostream& os, const PhaseField<Scalar>& W) {
    constexpr bool cplx = !std::is_same_v<Scalar, double>;
    CsvWriter w(os, cplx ? std::vector<std::string>{"x", "k", "value", "imag"}
                         : std::vector<std::string>{"x", "k", "value"});
    for (Index i = 0; i < W.grid.x.n; ++i)
        for (Index j = 0; j < W.grid.k.n; ++j) {
            w << W.grid.x.node(i) << W.grid.k.node(j);
            if constexpr (cplx) w << W.values(i, j).real() << W.values(i, j).imag();
            else w << W.values(i, j);
            w.end_row();
        }
}

}  // namespace

void write_binary(std::ostream& os, const RealField& W) { write_field(os, W, false); }
void write_binary(std::ostream& os, const ComplexPhaseField& W) { write_field(os, W, true); }

std::variant<RealField, ComplexPhaseField> read_binary(std::istream& is) {
    const auto nx = get<std::int64_t>(is), nk = get<std::int64_t>(is);
    PhaseGrid g;
    g.x.n = nx;
    g.k.n = nk;
    g.x.min = get<double>(is);
    g.x.max = get<double>(is);
    g.k.min = get<double>(is);
    g.k.max = get<double>(is);
    g.eps = get<double>(is);
    const auto flags = get<std::int64_t>(is);
    g.validate();
    const Frame frame = (flags & 2) ? Frame::scaled : Frame::physical;
    if (flags & 1) {
        ComplexPhaseField W(g, frame);
        for (Index i = 0; i < nx; ++i)
            for (Index j = 0; j < nk; ++j) {
                const double re = get<double>(is);
                W.values(i, j) = cdouble(re, get<double>(is));
            }
        return W;
    }
    RealField W(g, frame);
    for (Index i = 0; i < nx; ++i)
        for (Index j = 0; j < nk; ++j) W.values(i, j) = get<double>(is);
    return W;
}

void write_csv(std::ostream& os, const RealField& W) { write_field_csv(os, W); }
void write_csv(std::ostream& os, const ComplexPhaseField& W) { write_field_csv(os, W); }

void write_snapshot(std::ostream& os, const ComplexField& psi, double t) {
    put<std::int64_t>(os, psi.axis.n);
    put<double>(os, psi.axis.min);
    put<double>(os, psi.axis.max);
    put<double>(os, psi.eps);
    put<double>(os, t);
    for (Index i = 0; i < psi.axis.n; ++i) {
        put<double>(os, psi.values[i].real());
        put<double>(os, psi.values[i].imag());
    }
}

ComplexField read_snapshot(std::istream& is, double* t) {
    ComplexField psi;
    psi.axis.n = get<std::int64_t>(is);
    psi.axis.min = get<double>(is);
    psi.axis.max = get<double>(is);
    psi.eps = get<double>(is);
    const double time = get<double>(is);
    if (t) *t = time;
    psi.values.resize(psi.axis.n);
    for (Index i = 0; i < psi.axis.n; ++i) {
        const double re = get<double>(is);
        psi.values[i] = cdouble(re, get<double>(is));
    }
    return psi;
}

std::string format_double(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header)
    : os_(os), columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
    os_ << '\n';
}

void CsvWriter::sep() {
    if (in_row_ >= columns_) throw ConfigurationError("CsvWriter: too many columns in row");
    if (in_row_++) os_ << ',';
}

CsvWriter& CsvWriter::operator<<(double v) {
    sep();
    os_ << format_double(v);
    return *this;
}

CsvWriter& CsvWriter::operator<<(long long v) {
    sep();
    os_ << v;
    return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& v) {
    sep();
    os_ << v;
    return *this;
}

void CsvWriter::end_row() {
    os_ << '\n';
    in_row_ = 0;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigurationError("cannot open " + p.string() + " for writing");
    f << content;
}

}  // namespace wigner::io
