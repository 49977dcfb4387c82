// Copyright 2026 The Sharpmark Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHARPMARK_SHARPNESS_HPP_
#define SHARPMARK_SHARPNESS_HPP_

#include <cmath>
#include <stdexcept>
#include <string>

#include "sharpmark/filters.hpp"
#include "sharpmark/image.hpp"
#include "sharpmark/uwt.hpp"

namespace sharpmark {

/// High-frequency stimulus extractor.
enum class Backend { Hpf, Uwt };

/// How a single-channel image folds into the total stimulus: Single uses the
/// luma term as-is, Third divides it by 3 as if the chroma terms were present
/// but zero.
enum class GrayMode { Single, Third };

struct SharpnessConfig {
  double alpha = 2.0;       // stimulus exponent
  int block = 7;            // b_l, window/block side
  double epsilon = 1e-4;    // log/division stabilizer
  Backend backend = Backend::Hpf;
  double hpf_sigma = 0.25;  // Gaussian inside the high-pass kernel
  int hpf_size = 3;
  int border = -1;          // pixels cropped per side; negative = use block
  GrayMode gray_mode = GrayMode::Single;

  void validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw std::invalid_argument("SharpnessConfig: alpha must be positive and finite");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
      throw std::invalid_argument("SharpnessConfig: epsilon must be positive and finite");
    }
    if (block < 3 || block % 2 == 0) {
      throw std::invalid_argument("SharpnessConfig: block must be odd and >= 3");
    }
    if (!(hpf_sigma > 0.0)) {
      throw std::invalid_argument("SharpnessConfig: hpf_sigma must be positive");
    }
    if (hpf_size < 1 || hpf_size % 2 == 0) {
      throw std::invalid_argument("SharpnessConfig: hpf_size must be odd and >= 1");
    }
  }

  int effective_border() const { return border < 0 ? block : border; }

  // Median window for the localized map: block+2, bumped to the next odd
  // value when that lands even so the window has a center.
  int median_window() const {
    const int w = block + 2;
    return w % 2 == 0 ? w + 1 : w;
  }
};

struct SharpnessResult {
  double score = 0.0;   // Q_s = max over bs_map
  ImagePlane s_map;     // full-size raw sharpness map
  ImagePlane bs_map;    // border-cropped map the score is pooled from
  ImagePlane lbs_map;   // localized visualization map
  double gamma = 0.0;   // visualization gain
};

/// High-frequency response of one channel under the configured backend.
inline ImagePlane stimulus(const ImagePlane& channel, const SharpnessConfig& cfg) {
  if (cfg.backend == Backend::Uwt) {
    return uwt_haar_level1(channel).hh;
  }
  return convolve2d(channel, highpass_from_gaussian(cfg.hpf_size, cfg.hpf_sigma));
}

/// Absolute deviation of the stimulus from its non-overlapping blockwise mean.
inline ImagePlane mean_bias_removal(const ImagePlane& h, int b) {
  const ImagePlane bias = block_mean_nonoverlap(h, b);
  ImagePlane out(h.height(), h.width());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.samples()[k] = std::abs(h.samples()[k] - bias.samples()[k]);
  }
  return out;
}

/// Contrast-weighted, exponentiated stimulus:
/// T(i,j) = mh(i,j)^alpha * s(i,j) / (sum(s) + epsilon).
inline ImagePlane weighted_channel(const ImagePlane& mh, const ImagePlane& s,
                                   const SharpnessConfig& cfg) {
  if (!mh.same_shape(s)) {
    throw std::invalid_argument("weighted_channel: stimulus/contrast size mismatch");
  }
  double total = 0.0;
  for (double v : s.samples()) total += v;
  const double denom = total + cfg.epsilon;
  ImagePlane out(mh.height(), mh.width());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.samples()[k] = std::pow(mh.samples()[k], cfg.alpha) * s.samples()[k] / denom;
  }
  return out;
}

/// Channel combination and 1/alpha re-rooting. For three channels
/// TS = ((tY+tCb+tCr)/3)^(1/alpha); a single channel uses tY alone, folded
/// per cfg.gray_mode.
inline ImagePlane total_stimulus(const ImagePlane& t_y, const ImagePlane& t_cb,
                                 const ImagePlane& t_cr, int channel_count,
                                 const SharpnessConfig& cfg) {
  if (channel_count != 1 && channel_count != 3) {
    throw std::invalid_argument("total_stimulus: channel_count must be 1 or 3");
  }
  const double inv_alpha = 1.0 / cfg.alpha;
  ImagePlane out(t_y.height(), t_y.width());
  if (channel_count == 3) {
    if (!t_y.same_shape(t_cb) || !t_y.same_shape(t_cr)) {
      throw std::invalid_argument("total_stimulus: channel size mismatch");
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double avg =
          (t_y.samples()[k] + t_cb.samples()[k] + t_cr.samples()[k]) / 3.0;
      out.samples()[k] = std::pow(avg, inv_alpha);
    }
  } else {
    const double divisor = cfg.gray_mode == GrayMode::Third ? 3.0 : 1.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      out.samples()[k] = std::pow(t_y.samples()[k] / divisor, inv_alpha);
    }
  }
  return out;
}

/// Log-ratio sharpness map: S(i,j) = |log(eps)+eps| / |log(TS(i,j)+eps)+eps|.
/// TS = 0 lands exactly on 1; values approach the numerator/eps ceiling as TS
/// nears 1-eps.
inline ImagePlane raw_map(const ImagePlane& ts, const SharpnessConfig& cfg) {
  const double eps = cfg.epsilon;
  const double numer = std::abs(std::log(eps) + eps);
  ImagePlane out(ts.height(), ts.width());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.samples()[k] = numer / std::abs(std::log(ts.samples()[k] + eps) + eps);
  }
  return out;
}

/// Copy of the plane with `border` rows/columns removed from every side.
inline ImagePlane crop_border(const ImagePlane& p, int border) {
  if (border < 0) throw std::invalid_argument("crop_border: negative border");
  const int h = p.height() - 2 * border;
  const int w = p.width() - 2 * border;
  if (h < 1 || w < 1) {
    throw std::invalid_argument("crop_border: border " + std::to_string(border) +
                                " consumes the whole " + std::to_string(p.height()) + "x" +
                                std::to_string(p.width()) + " plane");
  }
  ImagePlane out(h, w);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      out(i, j) = p(i + border, j + border);
    }
  }
  return out;
}

/// Full pipeline: stimulus -> bias removal -> contrast weighting -> total
/// stimulus -> raw map -> cropped map -> score, plus the localized
/// visualization map.
inline SharpnessResult score_and_maps(const InputImage& img, const SharpnessConfig& cfg) {
  cfg.validate();
  const int border = cfg.effective_border();
  const int min_dim = 2 * border + 2;
  if (img.height() <= min_dim || img.width() <= min_dim) {
    throw std::invalid_argument(
        "score_and_maps: image " + std::to_string(img.height()) + "x" +
        std::to_string(img.width()) + " too small for border " + std::to_string(border) +
        " (needs more than " + std::to_string(min_dim) + " per side)");
  }

  const YCbCrImage ycc = to_ycbcr(img);
  const auto channel_term = [&cfg](const ImagePlane& channel) {
    const ImagePlane mh = mean_bias_removal(stimulus(channel, cfg), cfg.block);
    return weighted_channel(mh, local_std(channel, cfg.block), cfg);
  };

  ImagePlane ts;
  if (img.kind == ImageKind::Gray) {
    const ImagePlane t_y = channel_term(ycc.y);
    ts = total_stimulus(t_y, t_y, t_y, 1, cfg);
  } else {
    ts = total_stimulus(channel_term(ycc.y), channel_term(ycc.cb), channel_term(ycc.cr), 3,
                        cfg);
  }

  SharpnessResult result;
  result.s_map = raw_map(ts, cfg);
  result.bs_map = crop_border(result.s_map, border);
  result.score = max_value(result.bs_map);
  result.gamma =
      (result.score + cfg.epsilon) / (mean_value(result.bs_map) + cfg.epsilon);

  const ImagePlane med = block_median_overlap(result.bs_map, cfg.median_window());
  result.lbs_map = ImagePlane(med.height(), med.width());
  for (std::size_t k = 0; k < med.size(); ++k) {
    result.lbs_map.samples()[k] = std::exp(result.gamma * med.samples()[k]);
  }
  return result;
}

}  // namespace sharpmark

#endif  // SHARPMARK_SHARPNESS_HPP_
