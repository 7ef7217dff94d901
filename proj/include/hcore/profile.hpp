#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hcore/errors.hpp"

namespace hcore {

/// One scientist's citation record: one count per publication, held sorted
/// non-increasing ("times cited" order). The total is cached on construction.
class ScientistProfile {
public:
    ScientistProfile() = default;

    ScientistProfile(std::string id, std::vector<long long> citation_counts)
        : id_(std::move(id)), citations_(std::move(citation_counts)) {
        for (long long c : citations_) {
            if (c < 0)
                throw NegativeCitations("negative citation count for scientist '" + id_ + "'");
        }
        std::sort(citations_.begin(), citations_.end(), std::greater<>());
        total_ = std::accumulate(citations_.begin(), citations_.end(), 0LL);
    }

    const std::string& id() const { return id_; }
    const std::vector<long long>& citations() const { return citations_; }
    std::size_t paper_count() const { return citations_.size(); }
    long long total_citations() const { return total_; }

    bool operator==(const ScientistProfile& other) const {
        return id_ == other.id_ && citations_ == other.citations_;
    }

private:
    std::string id_;
    std::vector<long long> citations_;  // sorted descending
    long long total_ = 0;
};

}  // namespace hcore
