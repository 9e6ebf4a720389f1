#ifndef EDSVC_DATA_HPP
#define EDSVC_DATA_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace edsvc {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// N x d feature matrix, row-major.
class DataMatrix {
public:
    DataMatrix(std::size_t n_points, std::size_t n_dims, std::vector<double> values);

    std::size_t n_points() const { return n_points_; }
    std::size_t n_dims() const { return n_dims_; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * n_dims_, n_dims_};
    }
    double operator()(std::size_t i, std::size_t k) const {
        return values_[i * n_dims_ + k];
    }
    const std::vector<double>& values() const { return values_; }

private:
    std::size_t n_points_;
    std::size_t n_dims_;
    std::vector<double> values_;
};

// Class identifiers for final reporting only; never consulted during estimation.
struct GroundTruthLabels {
    std::vector<int> labels;
    std::vector<std::string> class_names;  // index -> original label text
};

// Symmetric N x N matrix of squared Euclidean distances, zero diagonal.
class DistanceMatrix {
public:
    explicit DistanceMatrix(std::size_t n, std::vector<double> sq_dists);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return sq_[i * n_ + j]; }
    const std::vector<double>& sq_dists() const { return sq_; }

    // Mean of the nonzero entries; 0 if all points coincide.
    double mean_nonzero_sq_dist() const;

private:
    std::size_t n_;
    std::vector<double> sq_;
};

// Which column of the CSV carries the class label.
struct LabelColumn {
    enum class Kind { None, Last, Index };
    Kind kind = Kind::None;
    std::size_t index = 0;  // 0-based, valid when kind == Index

    static LabelColumn none() { return {}; }
    static LabelColumn last() { return {Kind::Last, 0}; }
    static LabelColumn at(std::size_t i) { return {Kind::Index, i}; }
};

struct LoadedDataset {
    DataMatrix data;
    std::optional<GroundTruthLabels> labels;
};

// Comma-separated file; a non-numeric first row is treated as a header.
// Errors carry row/column locations.
LoadedDataset load_csv(const std::string& path, LabelColumn label_column);
LoadedDataset parse_csv(const std::string& content, LabelColumn label_column,
                        const std::string& origin = "<memory>");

// Per-column affine map onto [0,1]; constant columns map to zero.
DataMatrix normalize_minmax(const DataMatrix& data);

DistanceMatrix pairwise_sq_dists(const DataMatrix& data);

// Binary sidecar cache for the distance matrix: magic, content hash, N,
// row-major 64-bit floats.
std::uint64_t content_hash(const std::string& bytes);
void write_distance_cache(const std::string& path, std::uint64_t key,
                          const DistanceMatrix& dists);
std::optional<DistanceMatrix> read_distance_cache(const std::string& path,
                                                  std::uint64_t key);

}  // namespace edsvc

#endif
