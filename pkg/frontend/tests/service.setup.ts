/** Spawn the real validation service for the test run. */

import { spawn, type ChildProcess } from "node:child_process";
import * as path from "node:path";
import type { TestProject } from "vitest/node";

let child: ChildProcess | null = null;

export default async function setup(project: TestProject): Promise<() => void> {
  const repoRoot = path.resolve(__dirname, "..", "..");
  child = spawn("python3", ["-m", "bmclang", "serve", "--port", "0", "--quiet"], {
    cwd: repoRoot,
    env: {
      ...process.env,
      PYTHONPATH: path.join(repoRoot, "src"),
      PYTHONUNBUFFERED: "1",
    },
    stdio: ["ignore", "pipe", "inherit"],
  });

  const url = await new Promise<string>((resolve, reject) => {
    const timer = setTimeout(
      () => reject(new Error("service did not start within 15s")),
      15000,
    );
    let buffer = "";
    child!.stdout!.on("data", (chunk: Buffer) => {
      buffer += chunk.toString();
      const match = buffer.match(/listening on (http:\/\/[\w.]+:\d+)/);
      if (match) {
        clearTimeout(timer);
        resolve(match[1]);
      }
    });
    child!.on("exit", (code) => {
      clearTimeout(timer);
      reject(new Error(`service exited early with code ${code}`));
    });
  });

  project.provide("apiUrl", url);

  return () => {
    child?.kill();
    child = null;
  };
}

declare module "vitest" {
  export interface ProvidedContext {
    apiUrl: string;
  }
}
