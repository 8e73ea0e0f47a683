#pragma once

#include <cassert>
#include <cstdint>
#include <utility>

namespace heapsel {

// Cooperative space accounting. One unit is one live key value or one
// machine-word counter held by algorithm code. Algorithms declare what they
// keep alive through WorkspaceScope; the audit tests cross-check the
// declared constants against the inventory in workspace_units.hpp.
class WorkspaceLedger {
public:
    void acquire(std::uint64_t units) {
        live_ += units;
        if (live_ > peak_) peak_ = live_;
    }

    void release(std::uint64_t units) {
        assert(units <= live_);
        live_ -= units;
    }

    std::uint64_t live_units() const { return live_; }
    std::uint64_t peak_units() const { return peak_; }

    // Harness only; algorithms never reset accounting.
    void reset() {
        live_ = 0;
        peak_ = 0;
    }

private:
    std::uint64_t live_ = 0;
    std::uint64_t peak_ = 0;
};

// RAII handle for a block of declared units. Move-only.
class WorkspaceScope {
public:
    WorkspaceScope(WorkspaceLedger& ledger, std::uint64_t units)
        : ledger_(&ledger), units_(units) {
        ledger_->acquire(units_);
    }

    WorkspaceScope(WorkspaceScope&& o) noexcept
        : ledger_(std::exchange(o.ledger_, nullptr)), units_(o.units_) {}

    WorkspaceScope& operator=(WorkspaceScope&& o) noexcept {
        if (this != &o) {
            release_now();
            ledger_ = std::exchange(o.ledger_, nullptr);
            units_ = o.units_;
        }
        return *this;
    }

    WorkspaceScope(const WorkspaceScope&) = delete;
    WorkspaceScope& operator=(const WorkspaceScope&) = delete;

    ~WorkspaceScope() { release_now(); }

    // Grow the scope in place (used by the baseline's dynamic frontier).
    void grow(std::uint64_t units) {
        ledger_->acquire(units);
        units_ += units;
    }

    void shrink(std::uint64_t units) {
        assert(units <= units_);
        ledger_->release(units);
        units_ -= units;
    }

    std::uint64_t units() const { return units_; }

private:
    void release_now() {
        if (ledger_ != nullptr) {
            ledger_->release(units_);
            ledger_ = nullptr;
        }
    }

    WorkspaceLedger* ledger_;
    std::uint64_t units_;
};

}  // namespace heapsel
