#include "mcbyte/association.hpp"

#include <vector>

namespace mcbyte {

CostMatrix build_iou_costs(std::span<const BBox> pred_boxes, std::span<const BBox> det_boxes) {
    const int t = static_cast<int>(pred_boxes.size());
    const int d = static_cast<int>(det_boxes.size());
    CostMatrix m{Grid<double>(t, d), Grid<double>(t, d), Grid<EntryClass>(t, d, EntryClass::Plain)};
    for (int i = 0; i < t; ++i) {
        for (int j = 0; j < d; ++j) {
            const double c = 1.0 - iou(pred_boxes[i], det_boxes[j]);
            m.iou_costs.at(i, j) = c;
            m.fused_costs.at(i, j) = c;
        }
    }
    return m;
}

void classify_entries(CostMatrix& costs, double match_thresh) {
    const int t = costs.iou_costs.rows();
    const int d = costs.iou_costs.cols();
    std::vector<int> row_sub(t, 0), col_sub(d, 0);
    for (int i = 0; i < t; ++i) {
        for (int j = 0; j < d; ++j) {
            if (costs.iou_costs.at(i, j) < match_thresh) {
                ++row_sub[i];
                ++col_sub[j];
            }
        }
    }
    for (int i = 0; i < t; ++i) {
        for (int j = 0; j < d; ++j) {
            EntryClass cls = EntryClass::Plain;
            if (row_sub[i] >= 2 || col_sub[j] >= 2) {
                cls = EntryClass::Ambiguous;
            } else if (costs.iou_costs.at(i, j) >= match_thresh && row_sub[i] == 0 &&
                       col_sub[j] == 0) {
                cls = EntryClass::Isolated;
            }
            costs.classes.at(i, j) = cls;
        }
    }
}

MaskGateResult gate_mask(const MaskObservation* mask, const BBox& det,
                         const MaskGateThresholds& cfg) {
    MaskGateResult r;
    if (mask == nullptr || mask->empty()) {
        r.failing_condition = 1;
        return r;
    }
    const MaskBoxOverlap ov = mask_bbox_ratios(*mask, det);
    r.mf = ov.mf;
    r.mc = ov.mc;
    if (mask->mean_confidence < cfg.mask_conf) {
        r.failing_condition = 2;
        return r;
    }
    if (ov.mf < cfg.mf_min) {
        r.failing_condition = 3;
        return r;
    }
    if (ov.mc < cfg.mc_min) {
        r.failing_condition = 4;
        return r;
    }
    r.passed = true;
    return r;
}

void fuse_costs(CostMatrix& costs, const Grid<MaskGateResult>& gates, Variant variant) {
    const int t = costs.iou_costs.rows();
    const int d = costs.iou_costs.cols();
    for (int i = 0; i < t; ++i) {
        for (int j = 0; j < d; ++j) {
            const double base = costs.iou_costs.at(i, j);
            double fused = base;
            switch (variant) {
                case Variant::Baseline:
                    break;
                case Variant::A1:
                    fused = gates.at(i, j).mask_visible() ? 1.0 - gates.at(i, j).mf
                                                          : kUnmatchableCost;
                    break;
                case Variant::A2:
                    if (gates.at(i, j).mask_visible()) {
                        fused = 1.0 - gates.at(i, j).mf;
                    }
                    break;
                default: {
                    const EntryClass cls = costs.classes.at(i, j);
                    const bool eligible =
                        cls == EntryClass::Ambiguous || cls == EntryClass::Isolated;
                    if (eligible && gates.at(i, j).satisfies(required_conditions(variant))) {
                        fused = base - gates.at(i, j).mf;
                    }
                    break;
                }
            }
            costs.fused_costs.at(i, j) = fused;
        }
    }
}

}  // namespace mcbyte
