#include "speedup/closure.hpp"

#include "speedup/errors.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace speedup {

LocalTask local_task(const Task& task, const Simplex& sigma, const Simplex& tau) {
  if (tau.id_list() != sigma.id_list()) {
    throw IdMismatchError("tau " + tau.to_string() + " and sigma " + sigma.to_string() +
                          " have different ids");
  }
  const auto& legal = task.legal(sigma);
  for (const auto& v : tau.vertices()) {
    const bool present = std::any_of(legal.begin(), legal.end(),
                                     [&](const Simplex& s) { return s.contains(v); });
    if (!present) {
      throw NotInTargetError("vertex " + v.to_string() + " does not occur in Delta" +
                             sigma.to_string());
    }
  }

  auto target = ChromaticComplex::from_facets(legal, task.n());
  auto inputs = ChromaticComplex::from_facets({tau}, task.n());
  std::map<Simplex, std::vector<Simplex>> delta;
  for (const auto& face : faces(tau)) {
    std::vector<Simplex> allowed;
    if (face.size() == 1) {
      allowed.push_back(face);
    } else {
      const IdSet face_ids = face.ids();
      for (const auto& s : legal) allowed.push_back(*s.restrict_to(face_ids));
    }
    delta.emplace(face, std::move(allowed));
  }
  Task local = make_task(std::move(inputs), target, std::move(delta));
  return {sigma, tau, std::move(target), std::move(local)};
}

namespace {

// Per-id candidate values of Delta(sigma), sorted.
std::vector<std::vector<Value>> target_values(const std::vector<Simplex>& legal, std::size_t k) {
  std::vector<std::vector<Value>> out(k);
  for (const auto& s : legal) {
    for (std::size_t p = 0; p < k; ++p) out[p].push_back(s.vertices()[p].value);
  }
  for (auto& vs : out) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  }
  return out;
}

std::size_t index_in(const std::vector<Value>& vs, Value v) {
  return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
}

// Key identifying a local task up to relabeling ids by position and values
// by their per-id rank. Models are symmetric in ids except through the
// consensus proposals, which are recorded by position.
std::string local_key(const std::vector<std::string>& model_descriptors, const Simplex& tau,
                      const std::vector<Simplex>& legal,
                      const std::vector<std::vector<Value>>& values) {
  std::string key;
  for (const auto& d : model_descriptors) key += d + ";";
  key += "|";
  for (std::size_t p = 0; p < tau.size(); ++p) {
    key += std::to_string(index_in(values[p], tau.vertices()[p].value)) + ",";
  }
  key += "|";
  for (const auto& s : legal) {
    for (std::size_t p = 0; p < s.size(); ++p) {
      key += std::to_string(index_in(values[p], s.vertices()[p].value)) + ",";
    }
    key += ";";
  }
  return key;
}

using ModelsFor = std::function<std::vector<ModelSpec>(const Simplex& sigma)>;

std::string describe(const ModelSpec& m, const Simplex& sigma) {
  std::string out = m.tag();
  if (m.blackbox == BlackBox::BinaryConsensus) {
    out += ":";
    for (const auto& v : sigma.vertices()) out += std::to_string(m.bc_input(v.id, 1));
  }
  return out;
}

class ClosureEngine {
 public:
  ClosureEngine(const Task& task, ModelsFor models_for, const ClosureOptions& options)
      : task_(task), models_for_(std::move(models_for)), options_(options) {}

  Task run() {
    const auto simplices = task_.inputs.simplices();
    std::vector<std::vector<Simplex>> results(simplices.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&] {
      while (true) {
        const std::size_t k = next.fetch_add(1);
        if (k >= simplices.size()) return;
        try {
          results[k] = closed_delta(simplices[k]);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = simplices.size();
        }
      }
    };
    const int threads = std::max(1, options_.threads);
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    std::map<Simplex, std::vector<Simplex>> delta;
    std::vector<Simplex> images;
    for (std::size_t k = 0; k < simplices.size(); ++k) {
      images.insert(images.end(), results[k].begin(), results[k].end());
      delta.emplace(simplices[k], std::move(results[k]));
    }
    if (images.empty()) {
      throw Error("closure has no legal output on any input simplex");
    }
    auto outputs = ChromaticComplex::from_facets(std::move(images), task_.n());
    return make_task(task_.inputs, std::move(outputs), std::move(delta));
  }

 private:
  std::vector<Simplex> closed_delta(const Simplex& sigma) {
    const auto& legal = task_.legal(sigma);
    const std::size_t k = sigma.size();
    const auto values = target_values(legal, k);
    const auto ids = sigma.id_list();
    const auto models = models_for_(sigma);
    std::vector<std::string> descriptors;
    for (const auto& m : models) descriptors.push_back(describe(m, sigma));

    std::vector<Simplex> out;
    if (legal.empty()) return out;
    std::vector<std::size_t> pick(k, 0);
    while (true) {
      std::vector<Vertex> vs;
      for (std::size_t p = 0; p < k; ++p) vs.push_back({ids[p], values[p][pick[p]]});
      Simplex tau(std::move(vs));
      if (std::binary_search(legal.begin(), legal.end(), tau) ||
          locally_solvable(sigma, tau, models, descriptors, legal, values)) {
        out.push_back(std::move(tau));
      }
      std::size_t p = 0;
      while (p < k && ++pick[p] == values[p].size()) pick[p++] = 0;
      if (p == k) break;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool locally_solvable(const Simplex& sigma, const Simplex& tau, const std::vector<ModelSpec>& models,
                        const std::vector<std::string>& descriptors,
                        const std::vector<Simplex>& legal,
                        const std::vector<std::vector<Value>>& values) {
    const std::string key = local_key(descriptors, tau, legal, values);
    {
      std::lock_guard lock(memo_mutex_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    const LocalTask local = local_task(task_, sigma, tau);
    bool solvable = solve(local.task, models.front(), 0, options_.solve).solvable;
    for (std::size_t m = 0; m < models.size() && !solvable; ++m) {
      solvable = solve(local.task, models[m], 1, options_.solve).solvable;
    }
    std::lock_guard lock(memo_mutex_);
    memo_.emplace(key, solvable);
    return solvable;
  }

  const Task& task_;
  ModelsFor models_for_;
  ClosureOptions options_;
  std::mutex memo_mutex_;
  std::unordered_map<std::string, bool> memo_;
};

}  // namespace

Task closure(const Task& task, const ModelSpec& model, const ClosureOptions& options) {
  model.validate();
  ModelsFor models_for = [model](const Simplex& sigma) {
    if (model.blackbox != BlackBox::BinaryConsensus) return std::vector<ModelSpec>{model};
    std::vector<ModelSpec> out;
    const auto ids = sigma.id_list();
    for (std::size_t mask = 0; mask < (std::size_t{1} << ids.size()); ++mask) {
      std::map<ProcessId, int> beta;
      for (std::size_t p = 0; p < ids.size(); ++p) beta[ids[p]] = (mask >> p) & 1u;
      out.push_back(ModelSpec::iis_binary_consensus(beta));
    }
    return out;
  };
  return ClosureEngine(task, std::move(models_for), options).run();
}

Task closure_beta(const Task& task, const std::map<ProcessId, int>& beta,
                  const ClosureOptions& options) {
  for (auto id : task.inputs.ids()) {
    if (!beta.contains(id)) {
      throw ModelError("beta is undefined for process " + std::to_string(id.value));
    }
  }
  const ModelSpec model = ModelSpec::iis_binary_consensus(beta);
  model.validate();
  ModelsFor models_for = [model](const Simplex&) { return std::vector<ModelSpec>{model}; };
  return ClosureEngine(task, std::move(models_for), options).run();
}

bool is_fixed_point(const Task& task, const ModelSpec& model, const ClosureOptions& options) {
  return tasks_equal(closure(task, model, options), task);
}

SimplicialMap speedup_transform(const Task& task, const ModelSpec& model, int t,
                                const SimplicialMap& f) {
  if (t < 1) throw Error("speedup needs a map for at least one round");
  if (!verify_map(task, model, t, f)) {
    throw NotASolutionError("the given map does not solve the task in " + std::to_string(t) +
                            " rounds");
  }
  SimplicialMap out;
  for (const auto& v : iterate(task.inputs, model, t - 1).vertices()) {
    std::optional<int> box;
    switch (model.blackbox) {
      case BlackBox::None: break;
      case BlackBox::TestAndSet: box = 1; break;
      case BlackBox::BinaryConsensus: box = model.bc_input(v.id, t); break;
    }
    const Vertex solo{v.id, Value::view(box, {v})};
    out.assignment.emplace(v, f.at(solo));
  }
  return out;
}

ChainResult lower_bound_chain(const Task& task, const TaskTransform& transform,
                              const HaltPredicate& halt, int max_steps) {
  ChainResult result;
  Task current = task;
  for (int k = 0; k < max_steps; ++k) {
    if (halt(current)) {
      result.bound = k;
      return result;
    }
    if (k + 1 < max_steps) current = transform(current);
  }
  result.bound = max_steps;
  result.budget_exhausted = true;
  return result;
}

bool zero_round_solvable(const Task& task, const ModelSpec& model) {
  return solve(task, model, 0).solvable;
}

ChainResult lower_bound_chain(const Task& task, const ModelSpec& model, int max_steps,
                              const LowerBoundOptions& options) {
  bool use_closed_form = false;
  bool first = true;
  TaskTransform transform = [&](const Task& current) {
    if (use_closed_form) return (*options.closed_form)(current);
    Task next = closure(current, model, options.closure);
    if (first && options.closed_form && !options.force_full) {
      // Keep the family-tagged twin so later steps can re-parameterize it.
      Task shortcut = (*options.closed_form)(current);
      use_closed_form = tasks_equal(next, shortcut);
      if (use_closed_form) next = std::move(shortcut);
    }
    first = false;
    return next;
  };
  HaltPredicate halt = [&](const Task& current) { return zero_round_solvable(current, model); };
  ChainResult result = lower_bound_chain(task, transform, halt, max_steps);
  result.used_closed_form = use_closed_form;
  return result;
}

TaskTransform scale_epsilon(int factor) {
  return [factor](const Task& task) {
    if (!task.family || (task.family->kind != "approx" && task.family->kind != "liberal_approx")) {
      throw Error("epsilon scaling applies to approximate agreement tasks only");
    }
    TaskFamily next = *task.family;
    next.eps_num *= factor;
    return task_from_family(next);
  };
}

}  // namespace speedup
