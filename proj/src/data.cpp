#include "edsvc/data.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace edsvc {

DataMatrix::DataMatrix(std::size_t n_points, std::size_t n_dims,
                       std::vector<double> values)
    : n_points_(n_points), n_dims_(n_dims), values_(std::move(values)) {
    if (n_points_ < 1 || n_dims_ < 1)
        throw DataError("DataMatrix: need at least one point and one dimension");
    if (values_.size() != n_points_ * n_dims_)
        throw DataError("DataMatrix: value buffer size mismatch");
    for (double v : values_)
        if (!std::isfinite(v))
            throw DataError("DataMatrix: non-finite entry");
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> sq_dists)
    : n_(n), sq_(std::move(sq_dists)) {
    if (sq_.size() != n_ * n_)
        throw DataError("DistanceMatrix: buffer size mismatch");
}

double DistanceMatrix::mean_nonzero_sq_dist() const {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (sq_[i * n_ + j] > 0.0) {
                sum += sq_[i * n_ + j];
                ++count;
            }
    return count ? sum / static_cast<double>(count) : 0.0;
}

namespace {

void split_fields(const std::string& line, std::vector<std::string>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_real(const std::string& field, double& out) {
    const std::string t = trimmed(field);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && std::isfinite(out);
}

}  // namespace

LoadedDataset parse_csv(const std::string& content, LabelColumn label_column,
                        const std::string& origin) {
    std::istringstream in(content);
    std::string line;
    std::vector<std::string> fields;

    std::vector<std::vector<std::string>> rows;
    std::size_t arity = 0;
    std::size_t lineno = 0;
    bool first_data_row = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trimmed(line).empty()) continue;
        split_fields(line, fields);
        if (first_data_row) {
            first_data_row = false;
            // Header detection: the first row is a header only when *no*
            // feature cell parses as a number; a stray bad cell in an
            // otherwise numeric row is a data error, not a header. The label
            // cell is allowed to be text either way.
            std::size_t label_idx = fields.size();
            if (label_column.kind == LabelColumn::Kind::Last)
                label_idx = fields.size() - 1;
            else if (label_column.kind == LabelColumn::Kind::Index)
                label_idx = label_column.index;
            bool any_feature_numeric = false;
            double tmp;
            for (std::size_t c = 0; c < fields.size(); ++c)
                if (c != label_idx && parse_real(fields[c], tmp)) {
                    any_feature_numeric = true;
                    break;
                }
            if (!any_feature_numeric) continue;
        }
        if (arity == 0) {
            arity = fields.size();
        } else if (fields.size() != arity) {
            throw DataError(origin + ": row " + std::to_string(lineno) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(arity));
        }
        rows.push_back(fields);
    }
    if (rows.empty()) throw DataError(origin + ": no data rows");

    std::size_t label_idx = arity;  // sentinel: no label
    if (label_column.kind == LabelColumn::Kind::Last) {
        label_idx = arity - 1;
    } else if (label_column.kind == LabelColumn::Kind::Index) {
        if (label_column.index >= arity)
            throw DataError(origin + ": label column " +
                            std::to_string(label_column.index) +
                            " out of range for arity " + std::to_string(arity));
        label_idx = label_column.index;
    }
    const std::size_t n_dims = label_idx < arity ? arity - 1 : arity;
    if (n_dims == 0) throw DataError(origin + ": no feature columns");

    std::vector<double> values;
    values.reserve(rows.size() * n_dims);
    std::vector<std::string> raw_labels;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        for (std::size_t c = 0; c < arity; ++c) {
            if (c == label_idx) {
                raw_labels.push_back(trimmed(row[c]));
                continue;
            }
            double v;
            if (!parse_real(row[c], v))
                throw DataError(origin + ": row " + std::to_string(r + 1) +
                                ", column " + std::to_string(c + 1) +
                                ": cannot parse '" + row[c] + "' as a number");
            values.push_back(v);
        }
    }

    LoadedDataset out{DataMatrix(rows.size(), n_dims, std::move(values)), std::nullopt};
    if (label_idx < arity) {
        GroundTruthLabels gt;
        std::map<std::string, int> ids;
        for (const auto& s : raw_labels) {
            auto [it, inserted] = ids.emplace(s, static_cast<int>(ids.size()));
            if (inserted) gt.class_names.push_back(s);
            gt.labels.push_back(it->second);
        }
        out.labels = std::move(gt);
    }
    return out;
}

LoadedDataset load_csv(const std::string& path, LabelColumn label_column) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_csv(ss.str(), label_column, path);
}

DataMatrix normalize_minmax(const DataMatrix& data) {
    const std::size_t n = data.n_points(), d = data.n_dims();
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            double v = data(i, k);
            lo[k] = std::min(lo[k], v);
            hi[k] = std::max(hi[k], v);
        }
    std::vector<double> out(n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            double range = hi[k] - lo[k];
            out[i * d + k] = range > 0.0 ? (data(i, k) - lo[k]) / range : 0.0;
        }
    return DataMatrix(n, d, std::move(out));
}

DistanceMatrix pairwise_sq_dists(const DataMatrix& data) {
    const std::size_t n = data.n_points(), d = data.n_dims();
    std::vector<double> sq(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = data.values().data() + i * d;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* xj = data.values().data() + j * d;
            double s = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                double diff = xi[k] - xj[k];
                s += diff * diff;
            }
            sq[i * n + j] = s;
            sq[j * n + i] = s;
        }
    }
    return DistanceMatrix(n, std::move(sq));
}

namespace {
constexpr std::uint64_t kCacheMagic = 0x45445356'43444d31ull;  // "EDSVCDM1"
}

std::uint64_t content_hash(const std::string& bytes) {
    // FNV-1a 64-bit
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_distance_cache(const std::string& path, std::uint64_t key,
                          const DistanceMatrix& dists) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open cache file '" + path + "' for writing");
    std::uint64_t n = dists.size();
    f.write(reinterpret_cast<const char*>(&kCacheMagic), sizeof kCacheMagic);
    f.write(reinterpret_cast<const char*>(&key), sizeof key);
    f.write(reinterpret_cast<const char*>(&n), sizeof n);
    f.write(reinterpret_cast<const char*>(dists.sq_dists().data()),
            static_cast<std::streamsize>(n * n * sizeof(double)));
    if (!f) throw DataError("short write to cache file '" + path + "'");
}

std::optional<DistanceMatrix> read_distance_cache(const std::string& path,
                                                  std::uint64_t key) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return std::nullopt;
    std::uint64_t magic = 0, stored_key = 0, n = 0;
    f.read(reinterpret_cast<char*>(&magic), sizeof magic);
    f.read(reinterpret_cast<char*>(&stored_key), sizeof stored_key);
    f.read(reinterpret_cast<char*>(&n), sizeof n);
    if (!f || magic != kCacheMagic || stored_key != key) return std::nullopt;
    std::vector<double> sq(n * n);
    f.read(reinterpret_cast<char*>(sq.data()),
           static_cast<std::streamsize>(n * n * sizeof(double)));
    if (!f) return std::nullopt;
    return DistanceMatrix(n, std::move(sq));
}

}  // namespace edsvc
