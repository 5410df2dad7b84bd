#include "mcbyte/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "mcbyte/io.hpp"

namespace mcbyte {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_pm(std::mt19937_64& rng, double amp) {
    return (2.0 * uniform01(rng) - 1.0) * amp;
}

double normal01(std::mt19937_64& rng) {
    const double u1 = std::max(uniform01(rng), 1e-300);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

Vec2 interp_waypoints(const std::vector<Waypoint>& wps, int frame) {
    if (frame <= wps.front().frame) return {wps.front().cx, wps.front().cy};
    if (frame >= wps.back().frame) return {wps.back().cx, wps.back().cy};
    for (std::size_t k = 1; k < wps.size(); ++k) {
        if (frame <= wps[k].frame) {
            const Waypoint& a = wps[k - 1];
            const Waypoint& b = wps[k];
            const double lam =
                static_cast<double>(frame - a.frame) / static_cast<double>(b.frame - a.frame);
            return {a.cx + lam * (b.cx - a.cx), a.cy + lam * (b.cy - a.cy)};
        }
    }
    return {wps.back().cx, wps.back().cy};
}

// Paints the object's silhouette into a full-frame bitmap; pixels use their
// center for the ellipse membership test. Returns the painted pixel count.
std::int64_t paint_silhouette(ObjectShape shape, const BBox& box, int width, int height,
                              std::vector<std::uint8_t>& bmp, PixelRect& rect) {
    rect = rasterize(box, width, height);
    if (rect.empty()) return 0;
    std::int64_t count = 0;
    const double rx = 0.5 * box.w;
    const double ry = 0.5 * box.h;
    const double cx = box.cx();
    const double cy = box.cy();
    for (int r = rect.r0; r < rect.r1; ++r) {
        std::uint8_t* row = bmp.data() + static_cast<std::size_t>(r) * width;
        for (int c = rect.c0; c < rect.c1; ++c) {
            bool on = true;
            if (shape == ObjectShape::Ellipse) {
                const double dx = (c + 0.5 - cx) / rx;
                const double dy = (r + 0.5 - cy) / ry;
                on = dx * dx + dy * dy <= 1.0;
            }
            if (on) {
                row[c] = 1;
                ++count;
            }
        }
    }
    return count;
}

void clear_rect(std::vector<std::uint8_t>& bmp, int width, const PixelRect& rect) {
    for (int r = rect.r0; r < rect.r1; ++r) {
        std::fill_n(bmp.begin() + static_cast<std::size_t>(r) * width + rect.c0,
                    rect.c1 - rect.c0, std::uint8_t{0});
    }
}

// Separable square dilation by radius r, in place.
void dilate(std::vector<std::uint8_t>& bmp, int width, int height, int r,
            std::vector<std::uint8_t>& tmp, std::vector<std::int32_t>& pref) {
    if (r <= 0) return;
    tmp.assign(bmp.size(), 0);
    pref.resize(static_cast<std::size_t>(std::max(width, height)) + 1);
    for (int y = 0; y < height; ++y) {
        const std::uint8_t* row = bmp.data() + static_cast<std::size_t>(y) * width;
        pref[0] = 0;
        for (int x = 0; x < width; ++x) pref[x + 1] = pref[x] + row[x];
        std::uint8_t* orow = tmp.data() + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < width; ++x) {
            const int a = std::max(0, x - r);
            const int b = std::min(width, x + r + 1);
            orow[x] = pref[b] > pref[a] ? 1 : 0;
        }
    }
    for (int x = 0; x < width; ++x) {
        pref[0] = 0;
        for (int y = 0; y < height; ++y) {
            pref[y + 1] = pref[y] + tmp[static_cast<std::size_t>(y) * width + x];
        }
        for (int y = 0; y < height; ++y) {
            const int a = std::max(0, y - r);
            const int b = std::min(height, y + r + 1);
            bmp[static_cast<std::size_t>(y) * width + x] = pref[b] > pref[a] ? 1 : 0;
        }
    }
}

void check01(const char* name, double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
    }
}

void check_nonneg(const char* name, double v) {
    if (!(v >= 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be >= 0");
    }
}

}  // namespace

void ScenarioSpec::validate() const {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("image dimensions must be positive");
    }
    if (frame_count < 2) {
        throw std::invalid_argument("frame_count must be >= 2");
    }
    for (const ObjectSpec& o : objects) {
        if (!(o.w > 0.0) || !(o.h > 0.0)) {
            throw std::invalid_argument("object size must be positive");
        }
        if (o.waypoints.empty()) {
            throw std::invalid_argument("every object needs at least one waypoint");
        }
        for (std::size_t k = 1; k < o.waypoints.size(); ++k) {
            if (o.waypoints[k].frame <= o.waypoints[k - 1].frame) {
                throw std::invalid_argument("waypoint frames must be strictly increasing");
            }
        }
    }
    check01("drop_prob", det_noise.drop_prob);
    check01("drop_prob_occluded", det_noise.drop_prob_occluded);
    check01("score_base", det_noise.score_base);
    check_nonneg("center_jitter", det_noise.center_jitter);
    check_nonneg("size_jitter", det_noise.size_jitter);
    check_nonneg("score_occl_penalty", det_noise.score_occl_penalty);
    check_nonneg("score_jitter", det_noise.score_jitter);
    check_nonneg("shake_amp", camera.shake_amp);
    check01("dropout_prob", mask_noise.dropout_prob);
    check01("corrupt_prob", mask_noise.corrupt_prob);
    check01("bleed_prob", mask_noise.bleed_prob);
    check01("stray_prob", mask_noise.stray_prob);
    if (mask_noise.corrupt_prob + mask_noise.bleed_prob + mask_noise.stray_prob > 1.0) {
        throw std::invalid_argument("mask corruption probabilities must sum to <= 1");
    }
    check01("conf_drop", mask_noise.conf_drop);
    if (mask_noise.bleed_px < 0 || mask_noise.stray_size < 1) {
        throw std::invalid_argument("mask noise sizes out of range");
    }
    check_nonneg("trajectory_jitter_std", trajectory_jitter_std);
}

Scenario generate(const ScenarioSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    const int W = spec.width;
    const int H = spec.height;
    const int N = spec.frame_count;
    const int n = static_cast<int>(spec.objects.size());
    const std::size_t px_count = static_cast<std::size_t>(W) * H;

    // Camera offset per frame: frame coords = world coords - offset.
    std::vector<Vec2> off(static_cast<std::size_t>(N) + 1);
    for (int t = 1; t <= N; ++t) {
        Vec2 o{spec.camera.pan_vx * (t - 1), spec.camera.pan_vy * (t - 1)};
        if (spec.camera.shake_amp > 0.0 && t >= spec.camera.shake_from &&
            t <= spec.camera.shake_to) {
            o.x += uniform_pm(rng, spec.camera.shake_amp);
            o.y += uniform_pm(rng, spec.camera.shake_amp);
        }
        off[t] = o;
    }

    // World-space centers, jittered.
    std::vector<std::vector<Vec2>> world(static_cast<std::size_t>(N) + 1,
                                         std::vector<Vec2>(n));
    for (int t = 1; t <= N; ++t) {
        for (int i = 0; i < n; ++i) {
            Vec2 p = interp_waypoints(spec.objects[i].waypoints, t);
            if (spec.trajectory_jitter_std > 0.0) {
                p.x += spec.trajectory_jitter_std * normal01(rng);
                p.y += spec.trajectory_jitter_std * normal01(rng);
            }
            world[t][i] = p;
        }
    }

    Scenario out;
    for (int t = 1; t <= N; ++t) {
        out.warps.emplace(t, t == 1 ? WarpTransform::identity()
                                    : WarpTransform::translation(off[t - 1].x - off[t].x,
                                                                 off[t - 1].y - off[t].y));
    }

    std::vector<MaskStream> streams(n);
    std::vector<bool> born(n, false);

    std::vector<std::vector<std::uint8_t>> sil(n, std::vector<std::uint8_t>(px_count, 0));
    std::vector<std::vector<std::uint8_t>> vis(n, std::vector<std::uint8_t>(px_count, 0));
    std::vector<std::uint8_t> occupied(px_count, 0);
    std::vector<std::uint8_t> work;
    std::vector<std::uint8_t> morph_tmp;
    std::vector<std::int32_t> pref;
    std::vector<PixelRect> rect(n);
    std::vector<std::int64_t> sil_px(n), vis_px(n);
    std::vector<BBox> fbox(n);

    for (int t = 1; t <= N; ++t) {
        for (int i = 0; i < n; ++i) {
            const ObjectSpec& o = spec.objects[i];
            fbox[i] = BBox{world[t][i].x - off[t].x - 0.5 * o.w,
                           world[t][i].y - off[t].y - 0.5 * o.h, o.w, o.h};
            sil_px[i] = paint_silhouette(o.shape, fbox[i], W, H, sil[i], rect[i]);
        }

        // Depth resolution: topmost (last-listed) objects claim pixels first.
        for (int i = n - 1; i >= 0; --i) {
            vis_px[i] = 0;
            for (int r = rect[i].r0; r < rect[i].r1; ++r) {
                const std::size_t base = static_cast<std::size_t>(r) * W;
                for (int c = rect[i].c0; c < rect[i].c1; ++c) {
                    if (!sil[i][base + c]) continue;
                    if (!occupied[base + c]) {
                        vis[i][base + c] = 1;
                        ++vis_px[i];
                    }
                    occupied[base + c] = 1;
                }
            }
        }

        for (int i = 0; i < n; ++i) {
            const double occl =
                sil_px[i] > 0
                    ? 1.0 - static_cast<double>(vis_px[i]) / static_cast<double>(sil_px[i])
                    : 1.0;

            if (vis_px[i] >= 1) {
                out.gt.push_back(MotRecord{t, i + 1, fbox[i].x, fbox[i].y, fbox[i].w,
                                           fbox[i].h, 1.0});
                if (!born[i]) {
                    born[i] = true;
                    streams[i].stream_id = i + 1;
                    streams[i].birth_frame = t;
                    streams[i].birth_bbox = fbox[i];
                }
            }

            // Detection: nothing to see when fully hidden; otherwise subject
            // to the drop model.
            if (vis_px[i] >= 1) {
                const double pdrop = occl >= 0.5 ? spec.det_noise.drop_prob_occluded
                                                 : spec.det_noise.drop_prob;
                const bool dropped = pdrop > 0.0 && uniform01(rng) < pdrop;
                if (!dropped) {
                    BBox d = fbox[i];
                    if (spec.det_noise.center_jitter > 0.0) {
                        d.x += spec.det_noise.center_jitter * normal01(rng);
                        d.y += spec.det_noise.center_jitter * normal01(rng);
                    }
                    if (spec.det_noise.size_jitter > 0.0) {
                        const double sw = 1.0 + spec.det_noise.size_jitter * normal01(rng);
                        const double sh = 1.0 + spec.det_noise.size_jitter * normal01(rng);
                        const double cx = d.cx();
                        const double cy = d.cy();
                        d.w = std::max(2.0, d.w * sw);
                        d.h = std::max(2.0, d.h * sh);
                        d.x = cx - 0.5 * d.w;
                        d.y = cy - 0.5 * d.h;
                    }
                    double score =
                        spec.det_noise.score_base - spec.det_noise.score_occl_penalty * occl;
                    if (spec.det_noise.score_jitter > 0.0) {
                        score += spec.det_noise.score_jitter * normal01(rng);
                    }
                    score = std::clamp(score, 0.05, 1.0);
                    out.detections.push_back(MotRecord{t, -1, d.x, d.y, d.w, d.h, score});
                }
            }

            // Mask stream entry.
            if (vis_px[i] >= 1) {
                if (spec.mask_noise.dropout_prob > 0.0 &&
                    uniform01(rng) < spec.mask_noise.dropout_prob) {
                    continue;
                }
                enum class Mode { Clean, Corrupt, Bleed, Stray };
                Mode mode = Mode::Clean;
                const double psum = spec.mask_noise.corrupt_prob + spec.mask_noise.bleed_prob +
                                    spec.mask_noise.stray_prob;
                if (psum > 0.0) {
                    const double u = uniform01(rng);
                    if (u < spec.mask_noise.corrupt_prob) {
                        mode = Mode::Corrupt;
                    } else if (u < spec.mask_noise.corrupt_prob + spec.mask_noise.bleed_prob) {
                        mode = Mode::Bleed;
                    } else if (u < psum) {
                        mode = Mode::Stray;
                    }
                }

                // Most-overlapping (else nearest) other object; corruption
                // modes mislead toward it.
                const auto pick_neighbour = [&]() {
                    int best = -1;
                    double best_iou = 0.0;
                    double best_dist = 0.0;
                    for (int j = 0; j < n; ++j) {
                        if (j == i || sil_px[j] == 0) continue;
                        const double v = iou(fbox[i], fbox[j]);
                        const double dx = fbox[j].cx() - fbox[i].cx();
                        const double dy = fbox[j].cy() - fbox[i].cy();
                        const double dist = dx * dx + dy * dy;
                        if (best < 0 || v > best_iou ||
                            (v == best_iou && dist < best_dist)) {
                            best = j;
                            best_iou = v;
                            best_dist = dist;
                        }
                    }
                    return best;
                };

                double conf = 1.0;
                const std::vector<std::uint8_t>* src = &vis[i];
                if (mode == Mode::Corrupt || mode == Mode::Bleed) {
                    // Propagator slid off its target onto the neighbour's
                    // far side: the mask becomes the neighbour's box pushed
                    // half a box further away, so it never covers its own
                    // object and its box-coverage ratio stays low. A corrupt
                    // slide is flagged by a confidence drop; a bleed keeps
                    // full confidence and only the coverage ratio betrays
                    // it. Alone, the own mask dilated stands in.
                    const int nb = pick_neighbour();
                    PixelRect nr;
                    if (nb >= 0) {
                        const double dx = fbox[nb].cx() - fbox[i].cx();
                        const double dy = fbox[nb].cy() - fbox[i].cy();
                        const double len = std::max(1e-9, std::hypot(dx, dy));
                        BBox slid = fbox[nb];
                        slid.x += 0.5 * slid.w * dx / len;
                        slid.y += 0.5 * slid.h * dy / len;
                        nr = rasterize(slid, W, H);
                    }
                    if (!nr.empty()) {
                        work.assign(px_count, 0);
                        for (int r = nr.r0; r < nr.r1; ++r) {
                            std::fill_n(
                                work.begin() + static_cast<std::size_t>(r) * W + nr.c0,
                                nr.c1 - nr.c0, std::uint8_t{1});
                        }
                    } else {
                        work = vis[i];
                        dilate(work, W, H, spec.mask_noise.bleed_px, morph_tmp,
                               pref);
                    }
                    src = &work;
                    if (mode == Mode::Corrupt) {
                        conf = std::max(0.0, 1.0 - spec.mask_noise.conf_drop);
                    }
                } else if (mode == Mode::Stray) {
                    // Blob in the far corner of the neighbour's box; falls
                    // back to the clean mask when no neighbour exists or the
                    // blob leaves the image.
                    const int best = pick_neighbour();
                    if (best >= 0) {
                        const BBox& nb = fbox[best];
                        const double sz = spec.mask_noise.stray_size;
                        const double bx = nb.cx() >= fbox[i].cx() ? nb.right() - 0.5 - 0.5 * sz
                                                                  : nb.x + 0.5 + 0.5 * sz;
                        const double by = nb.cy() >= fbox[i].cy() ? nb.bottom() - 0.5 - 0.5 * sz
                                                                  : nb.y + 0.5 + 0.5 * sz;
                        const PixelRect blob =
                            rasterize(BBox{bx - 0.5 * sz, by - 0.5 * sz, sz, sz}, W, H);
                        if (!blob.empty()) {
                            work.assign(px_count, 0);
                            for (int r = blob.r0; r < blob.r1; ++r) {
                                std::fill_n(work.begin() +
                                                static_cast<std::size_t>(r) * W + blob.c0,
                                            blob.c1 - blob.c0, std::uint8_t{1});
                            }
                            src = &work;
                        }
                    }
                }

                MaskObservation obs;
                obs.width = W;
                obs.height = H;
                obs.runs = rle_encode(*src, W, H);
                obs.mean_confidence = conf;
                if (!obs.empty()) {
                    streams[i].frames.emplace(t, std::move(obs));
                }
            }
        }

        // Reset the scratch bitmaps touched this frame.
        for (int i = 0; i < n; ++i) {
            clear_rect(occupied, W, rect[i]);
            clear_rect(sil[i], W, rect[i]);
            clear_rect(vis[i], W, rect[i]);
        }
    }

    for (int i = 0; i < n; ++i) {
        if (born[i]) {
            out.streams.push_back(std::move(streams[i]));
        }
    }
    return out;
}

namespace {

ScenarioSpec make_crossing() {
    ScenarioSpec s;
    s.width = 640;
    s.height = 480;
    s.frame_count = 70;

    // A runs right at 10 px/f, crawls at 1.75 px/f while the occluder sweeps
    // over it, then accelerates away. The constant-velocity extrapolation of
    // its pre-occlusion motion overshoots the crawl by ~60 px.
    ObjectSpec a;
    a.shape = ObjectShape::Ellipse;
    a.w = a.h = 26.0;
    a.waypoints = {{1, 75, 240}, {24, 305, 240}, {40, 333, 240}, {70, 600, 240}};

    // B is wide enough to cover A completely for frames 24-28 while passing
    // left at a steady 11 px/f.
    ObjectSpec b;
    b.shape = ObjectShape::Rectangle;
    b.w = 96.0;
    b.h = 44.0;
    b.waypoints = {{1, 584, 240}, {50, 45, 240}, {70, 45, 240}};

    s.objects = {a, b};
    s.det_noise.drop_prob_occluded = 1.0;
    s.det_noise.score_base = 0.95;
    return s;
}

ScenarioSpec make_occlusion_cluster() {
    ScenarioSpec s;
    s.width = 640;
    s.height = 480;
    s.frame_count = 60;

    // Top lane: a small ellipse crawls behind a wide occluder that sweeps
    // left, vanishing completely for about five frames mid-sequence.
    ObjectSpec a;
    a.shape = ObjectShape::Ellipse;
    a.w = a.h = 28.0;
    a.waypoints = {{1, 60, 60}, {22, 300, 60}, {38, 330, 60}, {60, 520, 60}};
    s.objects.push_back(std::move(a));

    ObjectSpec b;
    b.shape = ObjectShape::Rectangle;
    b.w = 88.0;
    b.h = 40.0;
    b.waypoints = {{1, 634, 60}, {60, -15, 60}};
    s.objects.push_back(std::move(b));

    // Below, five ellipses funnel through a loose knot: closest approaches
    // stay near 20 px, so boxes overlap and rows go ambiguous without the
    // objects ever stacking outright.
    const double cx0 = 340.0, cy0 = 285.0;
    const double sizes[5] = {26.0, 28.0, 30.0, 32.0, 27.0};
    const int bend[5] = {34, 36, 38, 35, 37};
    constexpr double kTau = 2.0 * std::numbers::pi;
    for (int i = 0; i < 5; ++i) {
        const double ain = 0.35 + kTau * i / 5.0;
        const double aknot = ain + 0.9;
        const double aout = ain + 2.2;
        ObjectSpec o;
        o.shape = ObjectShape::Ellipse;
        o.w = o.h = sizes[i];
        o.waypoints = {
            {1, cx0 + 150.0 * std::cos(ain), cy0 + 150.0 * std::sin(ain)},
            {22, cx0 + 17.0 * std::cos(aknot), cy0 + 17.0 * std::sin(aknot)},
            {bend[i], cx0 + 17.0 * std::cos(aknot + 1.1),
             cy0 + 17.0 * std::sin(aknot + 1.1)},
            {60, cx0 + 160.0 * std::cos(aout), cy0 + 160.0 * std::sin(aout)},
        };
        s.objects.push_back(std::move(o));
    }

    s.det_noise.center_jitter = 1.2;
    s.det_noise.size_jitter = 0.04;
    s.det_noise.drop_prob = 0.04;
    s.det_noise.drop_prob_occluded = 0.5;
    s.det_noise.score_base = 0.92;
    s.det_noise.score_occl_penalty = 0.5;
    s.det_noise.score_jitter = 0.02;

    s.mask_noise.dropout_prob = 0.22;
    s.mask_noise.corrupt_prob = 0.14;
    s.mask_noise.bleed_prob = 0.12;
    s.mask_noise.stray_prob = 0.12;

    s.trajectory_jitter_std = 0.8;
    return s;
}

ScenarioSpec make_blur_pan() {
    ScenarioSpec s;
    s.width = 960;
    s.height = 480;
    s.frame_count = 50;

    s.camera.pan_vx = 3.0;
    s.camera.shake_amp = 45.0;
    s.camera.shake_from = 20;
    s.camera.shake_to = 32;

    const double ys[4] = {90.0, 190.0, 290.0, 390.0};
    for (int k = 0; k < 4; ++k) {
        ObjectSpec o;
        o.shape = ObjectShape::Rectangle;
        o.w = 30.0;
        o.h = 38.0;
        const double x0 = 130.0 + 75.0 * k;
        o.waypoints = {{1, x0, ys[k]}, {50, x0 + 294.0, ys[k]}};
        s.objects.push_back(std::move(o));
    }

    s.det_noise.center_jitter = 0.7;
    s.det_noise.size_jitter = 0.03;
    s.det_noise.drop_prob = 0.03;
    s.det_noise.drop_prob_occluded = 0.3;
    s.det_noise.score_base = 0.93;
    s.det_noise.score_occl_penalty = 0.3;
    s.det_noise.score_jitter = 0.02;

    s.mask_noise.dropout_prob = 0.85;

    s.trajectory_jitter_std = 0.5;
    return s;
}

ScenarioSpec make_pedestrian_plain() {
    ScenarioSpec s;
    s.width = 640;
    s.height = 480;
    s.frame_count = 40;
    const double ys[4] = {80.0, 180.0, 280.0, 380.0};
    for (int k = 0; k < 4; ++k) {
        ObjectSpec o;
        o.shape = ObjectShape::Rectangle;
        o.w = 24.0;
        o.h = 48.0;
        const double x0 = 60.0 + 40.0 * k;
        o.waypoints = {{1, x0, ys[k]}, {40, x0 + 273.0, ys[k]}};
        s.objects.push_back(std::move(o));
    }
    return s;
}

}  // namespace

namespace {

using nlohmann::json;

[[noreturn]] void spec_error(const std::string& file, const std::string& what) {
    throw ParseError((file.empty() ? std::string("scenario spec") : file) + ": " + what);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& file, const char* where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(known.begin(), known.end(),
                         [&](const char* k) { return key == k; }) == known.end()) {
            spec_error(file, std::string("unknown key '") + key + "' in " + where);
        }
    }
}

template <typename T>
void load(const json& obj, const char* key, T& out) {
    if (const auto it = obj.find(key); it != obj.end()) {
        out = it->get<T>();
    }
}

}  // namespace

ScenarioSpec parse_scenario_spec(const std::string& json_text, const std::string& file) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        spec_error(file, e.what());
    }
    if (!root.is_object()) spec_error(file, "top level must be an object");

    ScenarioSpec s;
    s.frame_count = 0;  // make the mandatory field visible when missing
    try {
        reject_unknown(root,
                       {"width", "height", "frame_count", "seed", "trajectory_jitter_std",
                        "objects", "detector", "camera", "mask_noise"},
                       file, "scenario");
        load(root, "width", s.width);
        load(root, "height", s.height);
        load(root, "frame_count", s.frame_count);
        load(root, "seed", s.seed);
        load(root, "trajectory_jitter_std", s.trajectory_jitter_std);

        if (!root.contains("objects") || !root["objects"].is_array()) {
            spec_error(file, "'objects' array is required");
        }
        for (const json& jo : root["objects"]) {
            reject_unknown(jo, {"shape", "w", "h", "waypoints"}, file, "object");
            ObjectSpec o;
            std::string shape = "rectangle";
            load(jo, "shape", shape);
            if (shape == "ellipse") {
                o.shape = ObjectShape::Ellipse;
            } else if (shape == "rectangle") {
                o.shape = ObjectShape::Rectangle;
            } else {
                spec_error(file, "shape must be 'ellipse' or 'rectangle'");
            }
            load(jo, "w", o.w);
            load(jo, "h", o.h);
            if (!jo.contains("waypoints")) spec_error(file, "object without waypoints");
            for (const json& jw : jo["waypoints"]) {
                if (!jw.is_array() || jw.size() != 3) {
                    spec_error(file, "waypoint must be [frame, cx, cy]");
                }
                o.waypoints.push_back(
                    Waypoint{jw[0].get<int>(), jw[1].get<double>(), jw[2].get<double>()});
            }
            s.objects.push_back(std::move(o));
        }

        if (root.contains("detector")) {
            const json& jd = root["detector"];
            reject_unknown(jd,
                           {"center_jitter", "size_jitter", "drop_prob", "drop_prob_occluded",
                            "score_base", "score_occl_penalty", "score_jitter"},
                           file, "detector");
            load(jd, "center_jitter", s.det_noise.center_jitter);
            load(jd, "size_jitter", s.det_noise.size_jitter);
            load(jd, "drop_prob", s.det_noise.drop_prob);
            load(jd, "drop_prob_occluded", s.det_noise.drop_prob_occluded);
            load(jd, "score_base", s.det_noise.score_base);
            load(jd, "score_occl_penalty", s.det_noise.score_occl_penalty);
            load(jd, "score_jitter", s.det_noise.score_jitter);
        }
        if (root.contains("camera")) {
            const json& jc = root["camera"];
            reject_unknown(jc, {"pan_vx", "pan_vy", "shake_amp", "shake_from", "shake_to"},
                           file, "camera");
            load(jc, "pan_vx", s.camera.pan_vx);
            load(jc, "pan_vy", s.camera.pan_vy);
            load(jc, "shake_amp", s.camera.shake_amp);
            load(jc, "shake_from", s.camera.shake_from);
            load(jc, "shake_to", s.camera.shake_to);
        }
        if (root.contains("mask_noise")) {
            const json& jm = root["mask_noise"];
            reject_unknown(jm,
                           {"dropout_prob", "corrupt_prob", "bleed_prob", "stray_prob",
                            "bleed_px", "stray_size", "conf_drop"},
                           file, "mask_noise");
            load(jm, "dropout_prob", s.mask_noise.dropout_prob);
            load(jm, "corrupt_prob", s.mask_noise.corrupt_prob);
            load(jm, "bleed_prob", s.mask_noise.bleed_prob);
            load(jm, "stray_prob", s.mask_noise.stray_prob);
            load(jm, "bleed_px", s.mask_noise.bleed_px);
            load(jm, "stray_size", s.mask_noise.stray_size);
            load(jm, "conf_drop", s.mask_noise.conf_drop);
        }
    } catch (const json::exception& e) {
        spec_error(file, e.what());
    }

    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        spec_error(file, e.what());
    }
    return s;
}

ScenarioSpec read_scenario_spec_file(const std::string& path) {
    return parse_scenario_spec(read_text_file(path), path);
}

ScenarioSpec preset(const std::string& name) {
    if (name == "crossing") return make_crossing();
    if (name == "occlusion_cluster") return make_occlusion_cluster();
    if (name == "blur_pan") return make_blur_pan();
    if (name == "pedestrian_plain") return make_pedestrian_plain();
    throw std::invalid_argument("unknown preset '" + name + "'");
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"crossing", "occlusion_cluster", "blur_pan",
                                                   "pedestrian_plain"};
    return names;
}

}  // namespace mcbyte
