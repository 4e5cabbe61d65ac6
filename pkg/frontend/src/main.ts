import { ApiClient } from "./api";
import { Explorer } from "./controller";

function apiBase(): string {
  const override = new URLSearchParams(window.location.search).get("api");
  return override ?? "http://127.0.0.1:8741";
}

const root = document.getElementById("app");
if (root === null) {
  throw new Error("missing #app mount point");
}
void new Explorer(root, new ApiClient(apiBase())).start();
