// Batch module-syntax verdicts using node's own parser (V8), the same
// engine behind `node --check`. Reads a manifest of file paths and
// prints one line per file: "ok" or "fail <message>".
// Requires: node --experimental-vm-modules checktool.js <manifest>

"use strict";
const fs = require("fs");
const vm = require("vm");

const manifest = fs.readFileSync(process.argv[2], "utf8");
for (const line of manifest.split("\n")) {
  const path = line.trim();
  if (!path) continue;
  const src = fs.readFileSync(path, "utf8");
  try {
    new vm.SourceTextModule(src);
    process.stdout.write("ok\n");
  } catch (err) {
    process.stdout.write("fail " + String(err.message || err).split("\n")[0] + "\n");
  }
}
