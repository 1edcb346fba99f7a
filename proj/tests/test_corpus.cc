// tests/test_corpus.cc

// Copyright 2026  The vtinv authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "testutil.h"
#include "vtinv/corpus.h"
#include "vtinv/errors.h"

using namespace vtinv;
using vtinv::testing::random_mat;

TEST_CASE("articulators have a fixed canonical order") {
  CHECK(articulator_slug(Articulator::kArytenoidCartilage) == "arytenoid-cartilage");
  CHECK(articulator_slug(Articulator::kVocalFolds) == "vocal-folds");
  CHECK(articulator_display(Articulator::kSoftPalateMidline) == "Soft palate midline");
  CHECK(articulator_from_slug("tongue") == Articulator::kTongue);
  CHECK_THROWS_AS(articulator_from_slug("jaw"), DataError);
  // alphabetical order of slugs
  for (size_t a = 1; a < kNumArticulators; ++a) {
    CHECK(articulator_slug(static_cast<Articulator>(a - 1)) <
          articulator_slug(static_cast<Articulator>(a)));
  }
}

TEST_CASE("phone inventory and one-hot") {
  const PhoneInventory inv = PhoneInventory::default_inventory();
  CHECK(inv.symbols.size() == 44);
  CHECK(inv.symbols[43] == "sil");
  CHECK(inv.silence_index == 43);

  const auto v = one_hot(0, inv);
  CHECK(v[0] == 1.0);
  double sum = 0.0;
  for (double x : v) sum += x;
  CHECK(sum == 1.0);

  const auto w = one_hot(17, inv);
  double sumw = 0.0;
  for (double x : w) sumw += x;
  CHECK(sumw == 1.0);
  CHECK(w[17] == 1.0);

  CHECK_THROWS_WITH_AS(one_hot(44, inv), doctest::Contains("unknown phone"), DataError);
}

TEST_CASE("contour upsampling inserts pointwise means") {
  SUBCASE("two identical frames") {
    Mat c(2, kContourDim, 3.5);
    const Mat up = upsample_contours(c, 3);
    CHECK(up.rows() == 3);
    for (size_t j = 0; j < kContourDim; ++j) CHECK(up(1, j) == 3.5);
  }
  SUBCASE("midpoint of 0 and 2 is 1") {
    Mat c(2, 4);
    for (size_t j = 0; j < 4; ++j) {
      c(0, j) = 0.0;
      c(1, j) = 2.0;
    }
    const Mat up = upsample_contours(c, 4);  // 2N target: duplicate the end
    CHECK(up(1, 0) == 1.0);
    CHECK(up.rows() == 4);
    for (size_t j = 0; j < 4; ++j) CHECK(up(3, j) == up(2, j));
  }
  SUBCASE("N=4 with target 8 duplicates the last frame") {
    Rng rng = Rng::seeded(2);
    const Mat c = random_mat(4, 6, rng);
    const Mat up = upsample_contours(c, 8);
    CHECK(up.rows() == 8);
    for (size_t j = 0; j < 6; ++j) {
      CHECK(up(7, j) == up(6, j));
      CHECK(up(6, j) == c(3, j));
    }
  }
  SUBCASE("other targets are alignment mismatches") {
    Mat c(4, 6, 1.0);
    CHECK_THROWS_WITH_AS(upsample_contours(c, 6), doctest::Contains("alignment mismatch"),
                         DataError);
    CHECK_THROWS_AS(upsample_contours(c, 9), DataError);
  }
}

namespace {

// [sil | a | sil (pause) | b | sil] with 10 ms frames.
std::vector<PhoneInterval> example_intervals() {
  std::vector<PhoneInterval> ivs;
  ivs.push_back({0.0, 100.0, kSilencePhone, 0, true});
  ivs.push_back({100.0, 200.0, 0, 0, true});   // phone "a"
  ivs.push_back({200.0, 250.0, kSilencePhone, 0, true});
  ivs.push_back({250.0, 350.0, 2, 0, true});   // phone "b"
  ivs.push_back({350.0, 450.0, kSilencePhone, 0, true});
  derive_sentence_flags(ivs, kSilencePhone);
  return ivs;
}

std::vector<double> centers(size_t n) {
  std::vector<double> c(n);
  for (size_t i = 0; i < n; ++i) c[i] = i * 10.0 + 5.0;
  return c;
}

}  // namespace

TEST_CASE("sentence flags distinguish pauses from inter-sentence silence") {
  auto ivs = example_intervals();
  CHECK_FALSE(ivs[0].sentence_internal);  // leading
  CHECK(ivs[2].sentence_internal);        // pause between a and b, same sentence
  CHECK_FALSE(ivs[4].sentence_internal);  // trailing

  // silence between different sentences is external
  std::vector<PhoneInterval> two = {{0.0, 100.0, 0, 0, true},
                                    {100.0, 200.0, kSilencePhone, 0, true},
                                    {200.0, 300.0, 1, 1, true}};
  derive_sentence_flags(two, kSilencePhone);
  CHECK_FALSE(two[1].sentence_internal);

  std::vector<PhoneInterval> bad = {{100.0, 50.0, 0, 0, true}};
  CHECK_THROWS_AS(derive_sentence_flags(bad, kSilencePhone), DataError);
}

TEST_CASE("silence policy: train keeps pauses, eval drops them") {
  const auto ivs = example_intervals();
  const auto frame_centers = centers(45);

  const SilenceFilterResult train =
      apply_silence_policy(frame_centers, ivs, kSilencePhone, SilenceMode::kTrain);
  // kept: frames 10..34 (centers 105..345)
  REQUIRE(train.kept.size() == 25);
  CHECK(train.kept.front() == 10);
  CHECK(train.kept.back() == 34);
  size_t masked = 0;
  for (size_t k = 0; k < train.kept.size(); ++k) {
    const bool in_pause = train.kept[k] >= 20 && train.kept[k] < 25;
    CHECK(train.eval_mask[k] == (in_pause ? 0 : 1));
    if (!train.eval_mask[k]) ++masked;
    CHECK(train.phones[k] == (in_pause ? kSilencePhone : (train.kept[k] < 20 ? 0 : 2)));
  }
  CHECK(masked == 5);

  const SilenceFilterResult eval =
      apply_silence_policy(frame_centers, ivs, kSilencePhone, SilenceMode::kEval);
  CHECK(eval.kept.size() == 20);
  for (auto m : eval.eval_mask) CHECK(m == 1);

  // eval mask frames are a subset of train kept frames
  for (size_t k = 0; k < eval.kept.size(); ++k) {
    CHECK(std::find(train.kept.begin(), train.kept.end(), eval.kept[k]) != train.kept.end());
  }
}

TEST_CASE("silence policy: no silence is a no-op") {
  std::vector<PhoneInterval> ivs = {{0.0, 200.0, 1, 0, true}, {200.0, 450.0, 2, 0, true}};
  derive_sentence_flags(ivs, kSilencePhone);
  const auto res = apply_silence_policy(centers(45), ivs, kSilencePhone, SilenceMode::kTrain);
  CHECK(res.kept.size() == 45);
  for (auto m : res.eval_mask) CHECK(m == 1);
}

TEST_CASE("silence policy: uncovered frame is a segmentation gap") {
  std::vector<PhoneInterval> ivs = {{0.0, 100.0, 1, 0, true}};
  CHECK_THROWS_WITH_AS(apply_silence_policy(centers(45), ivs, kSilencePhone, SilenceMode::kTrain),
                       doctest::Contains("segmentation gap"), DataError);
}

TEST_CASE("normalization stats") {
  SUBCASE("two frames 0 and 2 normalize to -1 and +1") {
    Mat m(2, 1);
    m(0, 0) = 0.0;
    m(1, 0) = 2.0;
    const NormStats s = fit_stats(m, "test");
    CHECK(s.mean[0] == doctest::Approx(1.0));
    CHECK(s.std[0] == doctest::Approx(1.0));  // population std
    normalize_inplace(m, s);
    CHECK(m(0, 0) == doctest::Approx(-1.0));
    CHECK(m(1, 0) == doctest::Approx(1.0));
  }
  SUBCASE("constant dimension is floored and maps to zero") {
    Mat m(5, 2);
    for (size_t i = 0; i < 5; ++i) {
      m(i, 0) = 7.0;
      m(i, 1) = i;
    }
    const NormStats s = fit_stats(m, "test");
    CHECK(s.std[0] == NormStats::kStdFloor);
    normalize_inplace(m, s);
    for (size_t i = 0; i < 5; ++i) CHECK(m(i, 0) == 0.0);
  }
  SUBCASE("normalized training data has mean 0 and std 1") {
    Rng rng = Rng::seeded(77);
    Mat m = random_mat(500, 4, rng, -3.0, 5.0);
    const NormStats s = fit_stats(m, "test");
    normalize_inplace(m, s);
    for (size_t j = 0; j < 4; ++j) {
      double mean = 0.0, sq = 0.0;
      for (size_t i = 0; i < m.rows(); ++i) {
        mean += m(i, j);
        sq += m(i, j) * m(i, j);
      }
      mean /= m.rows();
      CHECK(std::fabs(mean) < 1e-9);
      CHECK(std::fabs(std::sqrt(sq / m.rows() - mean * mean) - 1.0) < 1e-9);
    }
  }
  SUBCASE("round-trip to 1e-9") {
    Rng rng = Rng::seeded(78);
    Mat m = random_mat(20, 3, rng);
    const Mat orig = m;
    const NormStats s = fit_stats(m, "test");
    normalize_inplace(m, s);
    std::vector<double> back(3);
    for (size_t i = 0; i < m.rows(); ++i) {
      denormalize_span(m.row_span(i), back, s.mean, s.std);
      for (size_t j = 0; j < 3; ++j) CHECK(back[j] == doctest::Approx(orig(i, j)).epsilon(1e-9));
    }
  }
  SUBCASE("fewer than 2 frames is an error") {
    Mat m(1, 3, 1.0);
    CHECK_THROWS_AS(fit_stats(m, "test"), DataError);
  }
}

TEST_CASE("local contour stats use a clamped +-50 window") {
  Rng rng = Rng::seeded(99);
  std::vector<Mat> recs;
  for (size_t r = 0; r < 200; ++r) recs.push_back(random_mat(4, 2, rng, r, r + 1.0));
  std::vector<const Mat*> ptrs;
  for (const auto& m : recs) ptrs.push_back(&m);

  SUBCASE("single recording corpus") {
    std::vector<const Mat*> one = {ptrs[0]};
    const NormStats s = fit_contour_stats_local(one, 0);
    const NormStats direct = fit_stats(*ptrs[0], "direct");
    CHECK(s.mean == direct.mean);
    CHECK(s.std == direct.std);
  }
  SUBCASE("center 0 of 200 covers recordings 0..50") {
    const NormStats s = fit_contour_stats_local(ptrs, 0);
    std::vector<const Mat*> window(ptrs.begin(), ptrs.begin() + 51);
    const NormStats direct = fit_stats(window, "direct");
    CHECK(s.mean == direct.mean);
    CHECK(s.std == direct.std);
  }
  SUBCASE("interior center covers center-50..center+50") {
    const NormStats s = fit_contour_stats_local(ptrs, 100);
    std::vector<const Mat*> window(ptrs.begin() + 50, ptrs.begin() + 151);
    const NormStats direct = fit_stats(window, "direct");
    CHECK(s.mean == direct.mean);
  }
  SUBCASE("identical recordings collapse to floored stats") {
    Mat same(3, 2, 5.0);
    std::vector<const Mat*> copies(10, &same);
    const NormStats s = fit_contour_stats_local(copies, 4);
    CHECK(s.std[0] == NormStats::kStdFloor);
  }
}

TEST_CASE("acquisition split") {
  SUBCASE("10 acquisitions split 8/1/1") {
    const Split s = split_by_acquisition(10, 123);
    CHECK(s.train.size() == 8);
    CHECK(s.valid.size() == 1);
    CHECK(s.test.size() == 1);
  }
  SUBCASE("153 acquisitions split 123/15/15") {
    const Split s = split_by_acquisition(153, 42);
    CHECK(s.train.size() == 123);
    CHECK(s.valid.size() == 15);
    CHECK(s.test.size() == 15);
  }
  SUBCASE("same seed gives the same partition") {
    const Split a = split_by_acquisition(37, 9);
    const Split b = split_by_acquisition(37, 9);
    CHECK(a.train == b.train);
    CHECK(a.valid == b.valid);
    CHECK(a.test == b.test);
    const Split c = split_by_acquisition(37, 10);
    CHECK(a.train != c.train);
  }
  SUBCASE("every acquisition lands in exactly one split") {
    const Split s = split_by_acquisition(53, 7);
    std::vector<bool> seen(53, false);
    for (auto v : {&s.train, &s.valid, &s.test}) {
      for (size_t i : *v) {
        CHECK_FALSE(seen[i]);
        seen[i] = true;
      }
    }
    for (bool b : seen) CHECK(b);
  }
  SUBCASE("tiny corpora are rejected") {
    CHECK_THROWS_WITH_AS(split_by_acquisition(2, 1), doctest::Contains("corpus too small"),
                         DataError);
  }
}

TEST_CASE("contour csv roundtrip") {
  vtinv::testing::TempDir tmp;
  Rng rng = Rng::seeded(5);
  const Mat contours = random_mat(3, kContourDim, rng, 0.0, 136.0);
  write_contour_csv(tmp.file("c.csv"), contours);
  const Mat back = read_contour_csv(tmp.file("c.csv"));
  REQUIRE(back.rows() == 3);
  for (size_t i = 0; i < back.rows(); ++i) {
    for (size_t j = 0; j < kContourDim; ++j) {
      CHECK(back(i, j) == doctest::Approx(contours(i, j)).epsilon(1e-6));
    }
  }
}

TEST_CASE("segmentation tsv roundtrip") {
  vtinv::testing::TempDir tmp;
  const PhoneInventory inv = PhoneInventory::default_inventory();
  const auto ivs = example_intervals();
  write_segmentation_tsv(tmp.file("s.tsv"), ivs, inv);
  const auto back = read_segmentation_tsv(tmp.file("s.tsv"), inv);
  REQUIRE(back.size() == ivs.size());
  for (size_t i = 0; i < ivs.size(); ++i) {
    CHECK(back[i].start_ms == doctest::Approx(ivs[i].start_ms));
    CHECK(back[i].end_ms == doctest::Approx(ivs[i].end_ms));
    CHECK(back[i].symbol == ivs[i].symbol);
    CHECK(back[i].sentence_internal == ivs[i].sentence_internal);
  }
}

TEST_CASE("corpus manifest roundtrip") {
  vtinv::testing::TempDir tmp;
  Rng rng = Rng::seeded(55);
  RawCorpus corpus;
  for (int a = 0; a < 2; ++a) {
    RawAcquisition acq;
    acq.id = "acq" + std::to_string(a);
    for (int u = 0; u < 2; ++u) {
      RawUtterance utt;
      utt.id = "utt" + std::to_string(u);
      utt.features = random_mat(9, 39, rng);
      utt.contours = random_mat(5, kContourDim, rng, 0.0, 136.0);
      utt.intervals = example_intervals();
      acq.utterances.push_back(std::move(utt));
    }
    corpus.acquisitions.push_back(std::move(acq));
  }
  write_corpus(corpus, tmp.str());
  const RawCorpus back = load_corpus(tmp.file("manifest.json"));
  REQUIRE(back.acquisitions.size() == 2);
  CHECK(back.pixel_spacing_mm == corpus.pixel_spacing_mm);
  CHECK(back.acquisitions[1].utterances[1].features == corpus.acquisitions[1].utterances[1].features);
  CHECK(back.acquisitions[0].utterances[0].intervals.size() == 5);
}
