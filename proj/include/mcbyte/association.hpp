#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "mcbyte/geometry.hpp"
#include "mcbyte/grid.hpp"
#include "mcbyte/variant.hpp"

namespace mcbyte {

enum class EntryClass : std::uint8_t { Plain, Ambiguous, Isolated };

// Tracklets × detections cost state carried through one association stage.
struct CostMatrix {
    Grid<double> iou_costs;
    Grid<double> fused_costs;
    Grid<EntryClass> classes;
};

struct MaskGateThresholds {
    double mask_conf = 0.6;
    double mc_min = 0.9;
    double mf_min = 0.05;
};

// Outcome of the four-condition mask gate for one tracklet-detection pair.
// mc/mf are filled whenever the mask is visible (condition 1 holds), so the
// laxer ablation variants can still read mf after a later condition failed.
struct MaskGateResult {
    bool passed = false;
    std::optional<int> failing_condition;  // first failed index in {1,2,3,4}
    double mf = 0.0;
    double mc = 0.0;

    // Conditions 1..k all hold.
    bool satisfies(int k) const {
        return passed || (failing_condition && *failing_condition > k);
    }
    bool mask_visible() const { return satisfies(1); }
};

// Cost assigned by variant A1 to pairs whose mask is not visible: finite but
// far above any gate, so the pair can never be matched.
inline constexpr double kUnmatchableCost = 1e6;

CostMatrix build_iou_costs(std::span<const BBox> pred_boxes, std::span<const BBox> det_boxes);

// Fills classes: Ambiguous iff the entry's row or column holds >= 2 entries
// with iou_cost < match_thresh; Isolated iff the entry itself is >= thresh
// and both its row and column hold none; Plain otherwise.
void classify_entries(CostMatrix& costs, double match_thresh);

MaskGateResult gate_mask(const MaskObservation* mask, const BBox& det,
                         const MaskGateThresholds& cfg);

// Fills fused_costs according to the variant. For A3..McByte, only
// Ambiguous/Isolated entries whose gate satisfies the variant's condition
// count get iou_cost - mf; everything else keeps iou_cost.
void fuse_costs(CostMatrix& costs, const Grid<MaskGateResult>& gates, Variant variant);

}  // namespace mcbyte
