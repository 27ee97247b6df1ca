/** Spawns the Python mutation service for end-to-end tests. */

import { type ChildProcess, spawn } from "node:child_process";
import { fileURLToPath } from "node:url";
import path from "node:path";

const REPO_ROOT = path.resolve(
  path.dirname(fileURLToPath(import.meta.url)), "..", "..", "..",
);

export interface LiveService {
  baseUrl: string;
  stop(): void;
}

export async function startService(port: number): Promise<LiveService> {
  const child: ChildProcess = spawn(
    "python3",
    ["-m", "clusterkit.cli", "serve", "--port", String(port)],
    {
      cwd: REPO_ROOT,
      env: {
        ...process.env,
        PYTHONPATH: path.join(REPO_ROOT, "src"),
      },
      stdio: ["ignore", "ignore", "pipe"],
    },
  );
  const baseUrl = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 15000;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${baseUrl}/sessions/probe`);
      if (response.status === 404) {
        return { baseUrl, stop: () => child.kill() };
      }
    } catch (err) {
      lastError = err;
    }
    await new Promise((resolve) => setTimeout(resolve, 120));
  }
  child.kill();
  throw new Error(`service did not come up on ${baseUrl}: ${lastError}`);
}
