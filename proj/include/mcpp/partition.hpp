#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

namespace mcpp {

/// Block structure of a multiple-choice problem: indices [0,n) are split
/// into m contiguous blocks of sizes d_1..d_m, each of size at least 2.
class Partition {
public:
    explicit Partition(std::vector<int> block_sizes)
        : sizes_(std::move(block_sizes)) {
        if (sizes_.empty())
            throw std::invalid_argument("Partition: need at least one block");
        offsets_.reserve(sizes_.size());
        for (int d : sizes_) {
            if (d < 2)
                throw std::invalid_argument("Partition: every block size must be >= 2");
            offsets_.push_back(n_);
            n_ += d;
            dhat_ = std::max(dhat_, d);
        }
    }

    static Partition uniform(int m, int d) {
        return Partition(std::vector<int>(static_cast<size_t>(m), d));
    }

    int num_blocks() const { return static_cast<int>(sizes_.size()); }
    int size() const { return n_; }
    int block_size(int j) const { return sizes_[static_cast<size_t>(j)]; }
    int offset(int j) const { return offsets_[static_cast<size_t>(j)]; }
    int max_block_size() const { return dhat_; }

    const std::vector<int>& block_sizes() const { return sizes_; }

    bool operator==(const Partition& other) const { return sizes_ == other.sizes_; }

private:
    std::vector<int> sizes_;
    std::vector<int> offsets_;
    int n_ = 0;
    int dhat_ = 0;
};

} // namespace mcpp
