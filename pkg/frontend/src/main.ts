import { ApiClient } from "./api";
import { App } from "./app";
import "./style.css";

const app = new App(document.getElementById("app")!, new ApiClient(""));
void app.start();
