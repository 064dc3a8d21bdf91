#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adeff/analysis.hpp"
#include "adeff/dataset.hpp"
#include "adeff/detection_features.hpp"
#include "adeff/learners.hpp"
#include "adeff/pipeline.hpp"
#include "adeff/porter.hpp"
#include "adeff/synthetic.hpp"
#include "adeff/text_features.hpp"
#include "adeff/visual_features.hpp"

namespace py = pybind11;

namespace {

// (F, H, W, 3) uint8 array -> frame sequence.
adeff::FrameSequence frames_from_array(
    const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 4 || arr.shape(3) != 3) {
    throw std::invalid_argument("expected a (frames, height, width, 3) uint8 array");
  }
  adeff::FrameSequence seq;
  const auto frames = static_cast<std::size_t>(arr.shape(0));
  const int height = static_cast<int>(arr.shape(1));
  const int width = static_cast<int>(arr.shape(2));
  const std::uint8_t* data = arr.data();
  const std::size_t frame_bytes = static_cast<std::size_t>(height) * width * 3;
  for (std::size_t f = 0; f < frames; ++f) {
    adeff::Image img;
    img.width = width;
    img.height = height;
    img.rgb.assign(data + f * frame_bytes, data + (f + 1) * frame_bytes);
    seq.frames.push_back(std::move(img));
  }
  return seq;
}

adeff::LabeledSet make_set(std::vector<std::vector<double>> X, std::vector<int> y) {
  adeff::LabeledSet data;
  data.X = std::move(X);
  data.y = std::move(y);
  return data;
}

py::dict text_block_dict(const adeff::TextFeatureBlock& block) {
  py::dict d;
  d["text_length"] = block.text_length;
  d["word_count"] = block.word_count;
  d["meaningful_word_count"] = block.meaningful_word_count;
  d["avg_word_length"] = block.avg_word_length;
  d["avg_sentence_length"] = block.avg_sentence_length;
  d["sentiment_polarity"] = block.sentiment_polarity;
  d["common_word_hash"] = std::vector<double>(block.common_word_hash.begin(),
                                              block.common_word_hash.end());
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Advertisement-effectiveness toolkit (C++ core)";

  // dataset operations
  m.def("aggregate_mode", &adeff::aggregate_mode, py::arg("values"),
        "Most frequent value; ties resolve to the smallest.");
  m.def(
      "split_ids",
      [](const std::vector<std::string>& ids, double fraction, std::uint64_t seed) {
        const adeff::DatasetSplit split = adeff::split_dataset(ids, fraction, seed);
        return py::make_tuple(split.train, split.test);
      },
      py::arg("video_ids"), py::arg("fraction"), py::arg("seed"),
      "Deterministic shuffle-and-cut split; returns (train, test).");

  // text operations
  m.def("porter_stem", &adeff::porter_stem, py::arg("word"));
  m.def("tokenize", &adeff::tokenize, py::arg("text"));
  m.def("meaningful_words", &adeff::meaningful_words, py::arg("tokens"));
  m.def(
      "text_block",
      [](const std::vector<std::pair<int, std::string>>& segments) {
        adeff::Transcript t;
        for (const auto& [frame, text] : segments) {
          t.sampled_frames.push_back({frame, text});
        }
        return text_block_dict(adeff::text_block(t));
      },
      py::arg("segments"),
      "Text statistics from a list of (frame_index, text) segments.");

  // visual operations
  m.def(
      "average_hue",
      [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& frames) {
        const auto hue = adeff::average_hue(frames_from_array(frames));
        return std::vector<double>(hue.begin(), hue.end());
      },
      py::arg("frames"));
  m.def(
      "median_hue",
      [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& frames) {
        const auto hue = adeff::median_hue(frames_from_array(frames));
        return std::vector<double>(hue.begin(), hue.end());
      },
      py::arg("frames"));
  m.def(
      "average_intensity",
      [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& frames,
         double crop_fraction) {
        return adeff::average_intensity(frames_from_array(frames), crop_fraction);
      },
      py::arg("frames"), py::arg("crop_fraction") = 1.0);
  m.def(
      "shot_boundaries",
      [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& frames,
         double threshold) {
        return adeff::shot_boundaries(frames_from_array(frames), threshold);
      },
      py::arg("frames"), py::arg("threshold") = 0.4);
  m.def(
      "optical_flow_hist",
      [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& frames) {
        const auto hist = adeff::optical_flow_hist(frames_from_array(frames));
        return std::vector<double>(hist.begin(), hist.end());
      },
      py::arg("frames"));
  m.def("average_memorability", &adeff::average_memorability, py::arg("scores"));

  // detection operations
  m.def("label_distribution", &adeff::label_distribution, py::arg("labels"),
        py::arg("vocab_size"));
  m.def("ratio_from_distribution", &adeff::ratio_from_distribution,
        py::arg("distribution"), py::arg("prior"));
  m.def("audio_loudness", &adeff::audio_loudness, py::arg("amplitudes"));

  // analysis operations
  m.def("pearson", &adeff::pearson, py::arg("x"), py::arg("y"));
  m.def("coefficient_of_variation", &adeff::coefficient_of_variation,
        py::arg("ratings"));
  m.def("flow_entropy", &adeff::flow_entropy, py::arg("hist"));

  // learners
  py::class_<adeff::TrainedClassifier>(m, "Classifier")
      .def_property_readonly("kind",
                             [](const adeff::TrainedClassifier& c) {
                               return std::string(adeff::to_string(c.kind));
                             })
      .def_readonly("num_classes", &adeff::TrainedClassifier::num_classes)
      .def_readonly("input_dim", &adeff::TrainedClassifier::input_dim)
      .def("predict",
           [](const adeff::TrainedClassifier& c, const std::vector<double>& x) {
             return adeff::predict(c, x);
           },
           py::arg("x"))
      .def("predict_batch",
           [](const adeff::TrainedClassifier& c,
              const std::vector<std::vector<double>>& X) {
             std::vector<int> out;
             out.reserve(X.size());
             for (const auto& x : X) out.push_back(adeff::predict(c, x));
             return out;
           },
           py::arg("X"))
      .def("to_json", &adeff::classifier_to_json)
      .def_static("from_json", &adeff::classifier_from_json, py::arg("text"));

  m.def(
      "train_svm",
      [](std::vector<std::vector<double>> X, std::vector<int> y, double lambda,
         int epochs, int degree, std::uint64_t seed) {
        adeff::SvmParams params;
        params.lambda = lambda;
        params.epochs = epochs;
        params.degree = degree;
        params.seed = seed;
        return adeff::train_svm(make_set(std::move(X), std::move(y)), params);
      },
      py::arg("X"), py::arg("y"), py::arg("lambda_") = 1e-4, py::arg("epochs") = 50,
      py::arg("degree") = 1, py::arg("seed") = 0);
  m.def(
      "train_tree",
      [](std::vector<std::vector<double>> X, std::vector<int> y, int min_split,
         int max_depth) {
        adeff::TreeParams params;
        params.min_split = min_split;
        params.max_depth = max_depth;
        return adeff::train_tree(make_set(std::move(X), std::move(y)), params);
      },
      py::arg("X"), py::arg("y"), py::arg("min_split") = 2, py::arg("max_depth") = 16);
  m.def(
      "train_logreg",
      [](std::vector<std::vector<double>> X, std::vector<int> y, double lambda,
         int epochs, double step, std::uint64_t seed) {
        adeff::LogRegParams params;
        params.lambda = lambda;
        params.epochs = epochs;
        params.step = step;
        params.seed = seed;
        return adeff::train_logreg(make_set(std::move(X), std::move(y)), params);
      },
      py::arg("X"), py::arg("y"), py::arg("lambda_") = 1e-4, py::arg("epochs") = 200,
      py::arg("step") = 0.5, py::arg("seed") = 0);

  // pipeline commands
  m.def(
      "run_clean",
      [](const std::string& config) {
        return adeff::cmd_clean(adeff::load_config(config)).exit_code;
      },
      py::arg("config_path"));
  m.def(
      "run_features",
      [](const std::string& config) {
        return adeff::cmd_features(adeff::load_config(config)).exit_code;
      },
      py::arg("config_path"));
  m.def(
      "run_analyze",
      [](const std::string& config) {
        return adeff::cmd_analyze(adeff::load_config(config)).exit_code;
      },
      py::arg("config_path"));
  m.def(
      "run_train_eval",
      [](const std::string& config, const std::string& task) {
        std::optional<adeff::TaskKind> kind;
        if (task != "all") kind = adeff::task_from_string(task);
        return adeff::cmd_train_eval(adeff::load_config(config), kind).exit_code;
      },
      py::arg("config_path"), py::arg("task") = "all");
  m.def(
      "generate_corpus",
      [](const std::string& dir, std::size_t videos, std::uint64_t seed,
         double noise) {
        adeff::SynthOptions options;
        options.videos = videos;
        options.seed = seed;
        options.label_noise = noise;
        return adeff::generate_corpus(dir, options);
      },
      py::arg("dir"), py::arg("videos") = 965, py::arg("seed") = 7,
      py::arg("noise") = 0.2);
}
