(function () {
  "use strict";
  var root = document.getElementById("testme");
  var form = document.getElementById("testme-form");
  var result = document.getElementById("testme-result");
  var model;

  function fail(message) {
    if (form) form.hidden = true;
    var banner = document.createElement("p");
    banner.className = "testme-error";
    banner.setAttribute("role", "alert");
    banner.textContent = message;
    (root || document.body).insertBefore(banner, (root || document.body).firstChild);
  }

  try {
    var data = document.getElementById("testme-model");
    model = JSON.parse(data.textContent);
    if (!model || !Array.isArray(model.questions) || model.questions.length === 0) throw new Error("empty");
  } catch (e) {
    fail("This test page is damaged: the test definition is missing or unreadable.");
    return;
  }
  if (!form || form.dataset.hydrated === "true") return;
  form.dataset.hydrated = "true";

  function norm(s) { return String(s).trim().toLowerCase(); }

  function correct(q, i) {
    if (q.kind === "multiple_choice" || q.kind === "single_choice") {
      var picked = [];
      form.querySelectorAll('input[name="q' + i + '"]').forEach(function (el) {
        if (el.checked) picked.push(Number(el.value));
      });
      var key = [];
      q.answers.forEach(function (a, j) { if (a.correct) key.push(j); });
      return picked.length === key.length && key.every(function (j) { return picked.indexOf(j) >= 0; });
    }
    if (q.kind === "open_answer") {
      var input = document.getElementById("q" + i + "a0");
      return norm(input.value) === norm(q.expected);
    }
    if (q.kind === "pairing") {
      return q.pairs.every(function (p, j) {
        var sel = document.getElementById("q" + i + "a" + j);
        return sel.value !== "" && Number(sel.value) === j;
      });
    }
    return false;
  }

  form.addEventListener("submit", function (ev) {
    ev.preventDefault();
    var earned = 0, total = 0;
    model.questions.forEach(function (q, i) {
      total += q.points;
      var ok = correct(q, i);
      if (ok) earned += q.points;
      var section = document.getElementById("q" + i);
      section.classList.toggle("correct", ok);
      section.classList.toggle("incorrect", !ok);
    });
    var passed = total > 0 && earned * 100 >= model.pass_threshold_percent * total;
    result.textContent = earned + " / " + total + " points: " + (passed ? "passed" : "not passed") +
      " (pass mark " + model.pass_threshold_percent + "%)";
    result.className = passed ? "passed" : "failed";
  });
})();
